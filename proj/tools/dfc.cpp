#include <iostream>

int main() {
    std::cout << "dfc: work in progress" << std::endl;
    return 1;
}
