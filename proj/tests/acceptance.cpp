#include "dproc/dproc.hpp"
int main() { return 0; }
