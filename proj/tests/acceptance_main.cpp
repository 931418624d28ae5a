#include <iostream>

#include "qshap/accept.hpp"

int main() {
    bool ok = qshap::accept::runAcceptance(std::cout);
    return ok ? 0 : 1;
}
