#ifndef CIVHS_ERRORS_HPP
#define CIVHS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace civhs {

// Exit-code contract: 2 input, 3 precision/window, 4 unsupported singularity.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct input_error : error {
    using error::error;
};

struct parse_error : input_error {
    using input_error::input_error;
};

// Truncation window too small to decide the requested coefficient.
struct precision_error : error {
    using error::error;
};

// Non-ADE type, irrational branch data, or anything else the toolkit
// deliberately does not model.
struct unsupported_error : error {
    using error::error;
};

}  // namespace civhs

#endif
