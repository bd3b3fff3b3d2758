#pragma once

#include <stdexcept>
#include <string>

namespace ppmwt {

/// Parameters that are well-formed but outside the scheme's operating range
/// (too much energy per use, a code dimension that cannot exist, a security
/// budget that cannot be met). Distinct from std::invalid_argument /
/// std::domain_error, which signal caller bugs.
class infeasible_error : public std::runtime_error {
public:
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ppmwt
