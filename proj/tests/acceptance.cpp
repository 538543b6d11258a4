#include <cstdio>
int main(int,char**){std::puts("placeholder");return 0;}
