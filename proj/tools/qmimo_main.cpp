#include <iostream>
int main() { std::cout << "qmimo placeholder\n"; return 0; }
