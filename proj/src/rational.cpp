#include "bulgsol/rational.hpp"

#include <cstdlib>

namespace bulgsol {

Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(std::stoll(text), 1);
        }
        const std::int64_t n = std::stoll(text.substr(0, slash));
        const std::int64_t d = std::stoll(text.substr(slash + 1));
        return Rational(n, d);
    } catch (const std::logic_error&) {
        fail(ErrorCode::BadInput, "cannot parse rational '" + text + "'");
    }
}

} // namespace bulgsol
