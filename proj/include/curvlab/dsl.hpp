#pragma once

#include "curvlab/error.hpp"
#include "curvlab/kernel.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace curvlab {

// Syntax error with the byte offset of the offending token and what would
// have been accepted there.
class ParseError : public Error {
public:
    ParseError(std::size_t position, std::vector<std::string> expected, const std::string& found);

    std::size_t position() const { return position_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t position_;
    std::vector<std::string> expected_;
};

// expr    := term ('*' term)*
// term    := primary ('^' real)*
// primary := atom | 'contract' '(' expr ')' | '(' expr ')'
// atom    := szego | szego_poly(m) | da(m) | diag([r, ...]; tail=r) | detball2 | const(r)
// Domain mismatches surface as ShapeMismatch.
KernelSpec parse_kernel_dsl(std::string_view text);

} // namespace curvlab
