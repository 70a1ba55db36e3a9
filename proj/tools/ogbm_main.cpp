#include <iostream>

int main() {
    std::cout << "ogbm stub\n";
    return 0;
}
