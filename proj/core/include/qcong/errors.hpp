#pragma once

#include <stdexcept>
#include <string>

namespace qcong {

// Bad argument kinds thrown by the builders. All derive from
// std::invalid_argument so callers that only want "reject the input"
// can catch one type.
struct negative_argument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct argument_out_of_range : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct constraint_violation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct parity_violation : constraint_violation {
  using constraint_violation::constraint_violation;
};

struct zero_base : std::domain_error {
  using std::domain_error::domain_error;
};

struct negative_exponent : std::domain_error {
  using std::domain_error::domain_error;
};

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qcong
