#include <cstdio>

int main() {
    std::puts("ignis: CLI under construction");
    return 0;
}
