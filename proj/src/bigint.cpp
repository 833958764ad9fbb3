#include "peg/bigint.hpp"

#include <cctype>
#include <stdexcept>

namespace peg {

Int parse_int(std::string_view text)
{
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
    }
    if (i == text.size()) throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    Int v = 0;
    for (; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
        v = v * 10 + (text[i] - '0');
    }
    return negative ? Int(-v) : v;
}

}  // namespace peg
