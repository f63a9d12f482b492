#ifndef KHO_ERRORS_HPP
#define KHO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kho {

// Base class for everything this library throws on purpose.
class error : public std::runtime_error {
  public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad or missing configuration values. Messages name the offending key.
class config_error : public error {
  public:
    explicit config_error(const std::string& msg) : error(msg) {}
};

// Physical-parameter validity bound violated (adiabatic regime checks).
class validity_error : public error {
  public:
    explicit validity_error(const std::string& msg) : error(msg) {}
};

// Fock-basis truncation inadequate for the requested state or evolution.
class truncation_error : public error {
  public:
    explicit truncation_error(const std::string& msg) : error(msg) {}
};

// Numerical failure (eigensolver breakdown, lost normalization).
class numerics_error : public error {
  public:
    explicit numerics_error(const std::string& msg) : error(msg) {}
};

// Orbit does not close within tolerance, so stability is undefined.
class not_periodic_error : public error {
  public:
    explicit not_periodic_error(const std::string& msg) : error(msg) {}
};

// Overlap reconstruction requested at a kick index where the Ramsey
// phase system is (near-)singular; caller should skip or interpolate.
class singular_index_error : public error {
  public:
    explicit singular_index_error(const std::string& msg) : error(msg) {}
};

// A quantity violated a contract that only broken code can violate.
class internal_error : public error {
  public:
    explicit internal_error(const std::string& msg) : error(msg) {}
};

}  // namespace kho

#endif
