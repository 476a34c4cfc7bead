#ifndef ACF_ERRORS_HPP
#define ACF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace acf {

/**
 * Malformed or empty input data (edge lists, CSV). Distinct from
 * std::invalid_argument (bad parameters) and std::runtime_error (numerical or
 * resource failures) so the CLI can map error classes to exit codes.
 */
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace acf

#endif
