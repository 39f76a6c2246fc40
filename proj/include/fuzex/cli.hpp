#pragma once

#include <iostream>

namespace fuzex {

// Exit codes: 0 ok, 1 reproduction returned bottom, 2 infeasible parameters,
// 3 digest mismatch, 4 malformed input, 5 experiment bound violation,
// 64 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
            std::ostream& err = std::cerr);

}  // namespace fuzex
