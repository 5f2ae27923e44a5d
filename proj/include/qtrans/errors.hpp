#pragma once

#include <stdexcept>

namespace qtrans {

/// Runtime numerical failure: norm drift beyond tolerance, NaN amplitudes,
/// a grid too small for the state, or a non-converging iteration. The CLI
/// maps this to exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qtrans
