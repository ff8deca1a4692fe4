#include <cstdio>
int main(){ std::puts("qtfock"); return 0; }
