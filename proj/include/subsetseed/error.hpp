#ifndef SUBSETSEED_ERROR_HPP
#define SUBSETSEED_ERROR_HPP

#include <stdexcept>
#include <string>

namespace subsetseed {

// All parse/validation failures in the library throw this.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace subsetseed

#endif
