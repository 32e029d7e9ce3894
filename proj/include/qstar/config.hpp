#ifndef QSTAR_CONFIG_HPP
#define QSTAR_CONFIG_HPP

#include <complex>

namespace qstar {

// Working precision for the non-templated parts of the library (file IO,
// command line front end). The numerical core is templated on the scalar.
using real_t = double;
using complex_t = std::complex<real_t>;

}  // namespace qstar

#endif  // QSTAR_CONFIG_HPP
