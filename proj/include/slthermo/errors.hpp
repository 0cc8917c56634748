#pragma once

#include <stdexcept>
#include <string>

namespace slthermo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// Strain outside the admissible set b * energy_norm < 1 - guard.
class InadmissibleStrain : public Error {
 public:
  InadmissibleStrain(double energy_norm, double b, const std::string& where = {});
  double energy_norm() const { return energy_norm_; }

 private:
  double energy_norm_;
};

class MisalignedCrack : public Error {
 public:
  using Error::Error;
};

class EmptyDirichlet : public Error {
 public:
  using Error::Error;
};

class SolverBreakdown : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace slthermo
