#include "curvlab/dsl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace curvlab {

namespace {

std::string describe_expected(const std::vector<std::string>& expected)
{
    std::string s;
    for (std::size_t i = 0; i < expected.size(); ++i)
        s += (i ? ", " : "") + expected[i];
    return s;
}

} // namespace

ParseError::ParseError(std::size_t position, std::vector<std::string> expected, const std::string& found)
    : Error("syntax error at position " + std::to_string(position) + ": expected one of {" +
            describe_expected(expected) + "}, found " + found),
      position_(position), expected_(std::move(expected))
{
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    KernelSpec parse()
    {
        KernelSpec k = expr();
        skip_ws();
        if (pos_ != text_.size())
            fail({"'*'", "'^'", "end of input"});
        return k;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    std::string found() const
    {
        if (pos_ >= text_.size())
            return "end of input";
        std::size_t end = pos_;
        if (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_') {
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                ++end;
        } else {
            ++end;
        }
        return "'" + std::string(text_.substr(pos_, end - pos_)) + "'";
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const
    {
        throw ParseError(pos_, std::move(expected), found());
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c))
            fail({std::string("'") + c + "'"});
    }

    std::string identifier()
    {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    double real()
    {
        skip_ws();
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        // std::from_chars rejects a leading '+'.
        if (first != last && *first == '+' && first + 1 != last && first[1] != '-')
            ++first;
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::general);
        if (ec != std::errc() || ptr == first || !std::isfinite(v))
            fail({"real number"});
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return v;
    }

    std::size_t dimension()
    {
        const std::size_t at = (skip_ws(), pos_);
        const double v = real();
        if (v < 1.0 || v != std::floor(v) || v > 16.0) {
            pos_ = at;
            fail({"positive integer dimension"});
        }
        return static_cast<std::size_t>(v);
    }

    KernelSpec expr()
    {
        KernelSpec k = term();
        while (true) {
            skip_ws();
            const std::size_t at = pos_;
            if (!accept('*'))
                return k;
            KernelSpec rhs = term();
            try {
                k = product(k, rhs);
            } catch (const ShapeMismatch& e) {
                throw ShapeMismatch(std::string(e.what()) + " (at position " + std::to_string(at) + ")");
            }
        }
    }

    KernelSpec term()
    {
        KernelSpec k = primary();
        while (accept('^'))
            k = power(k, real());
        return k;
    }

    KernelSpec primary()
    {
        skip_ws();
        if (accept('('))  {
            KernelSpec k = expr();
            expect(')');
            return k;
        }
        const std::size_t at = pos_;
        const std::string id = identifier();
        if (id == "szego")
            return szego_disc();
        if (id == "detball2")
            return det_ball_2x2();
        if (id == "szego_poly" || id == "da") {
            expect('(');
            const std::size_t m = dimension();
            expect(')');
            return id == "da" ? drury_arveson(m) : szego_polydisc(m);
        }
        if (id == "const") {
            expect('(');
            const double c = real();
            expect(')');
            return constant(c);
        }
        if (id == "diag")
            return diag();
        if (id == "contract") {
            expect('(');
            KernelSpec inner = expr();
            expect(')');
            try {
                return contract(inner);
            } catch (const ShapeMismatch& e) {
                throw ShapeMismatch(std::string(e.what()) + " (at position " + std::to_string(at) + ")");
            }
        }
        pos_ = at;
        fail({"szego", "szego_poly", "da", "diag", "detball2", "const", "contract", "'('"});
    }

    KernelSpec diag()
    {
        expect('(');
        expect('[');
        std::vector<double> coeffs;
        if (!accept(']')) {
            coeffs.push_back(real());
            while (!accept(']')) {
                if (!accept(','))
                    fail({"','", "']'"});
                coeffs.push_back(real());
            }
        }
        double tail = 0.0;
        if (accept(';')) {
            skip_ws();
            const std::size_t at = pos_;
            if (identifier() != "tail") {
                pos_ = at;
                fail({"tail"});
            }
            expect('=');
            tail = real();
        }
        skip_ws();
        if (!accept(')'))
            fail({"';'", "')'"});
        return diagonal(std::move(coeffs), tail);
    }
};

} // namespace

KernelSpec parse_kernel_dsl(std::string_view text)
{
    return Parser(text).parse();
}

} // namespace curvlab
