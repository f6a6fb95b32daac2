#include <iostream>

int main(int argc, char** argv) {
    (void)argc;
    (void)argv;
    std::cout << "dgcat: command line not wired up yet\n";
    return 2;
}
