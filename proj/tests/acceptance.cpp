#include <iostream>

int main() {
    std::cerr << "acceptance suite not wired up yet" << std::endl;
    return 1;
}
