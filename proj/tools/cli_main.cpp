#include "fatsurf/fatgraph.hpp"

int main() { return 0; }
