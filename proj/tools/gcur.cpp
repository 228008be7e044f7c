#include <cstdio>

int main() {
    std::puts("gcur placeholder");
    return 0;
}
