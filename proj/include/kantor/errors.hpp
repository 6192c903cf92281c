#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kantor {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
  DimensionMismatch(const std::string& where, std::size_t got, std::size_t want)
      : Error(where + ": dimension " + std::to_string(got) + ", expected " +
              std::to_string(want)) {}
};

// Raised when (+inf) + (-inf) would occur; we never produce silent NaN.
struct IndeterminateSum : Error {
  IndeterminateSum() : Error("indeterminate sum (+inf) + (-inf)") {}
};

struct NonpositiveScale : Error {
  explicit NonpositiveScale(double lambda)
      : Error("scale factor must be > 0, got " + std::to_string(lambda)) {}
};

struct NoConvergence : Error {
  double residual;
  long iterations;
  NoConvergence(const std::string& where, double residual_, long iterations_)
      : Error(where + ": no convergence after " + std::to_string(iterations_) +
              " iterations, residual " + std::to_string(residual_)),
        residual(residual_),
        iterations(iterations_) {}
};

struct NegativeCycle : Error {
  std::vector<int> cycle;  // witness, as a node sequence
  explicit NegativeCycle(std::vector<int> cycle_)
      : Error("negative-total-weight cycle present"), cycle(std::move(cycle_)) {}
};

struct Infeasible : Error {
  explicit Infeasible(const std::string& where) : Error(where + ": infeasible") {}
};

struct PrimalInfinite : Error {
  explicit PrimalInfinite(const std::string& where)
      : Error(where + ": no finite-cost feasible point") {}
};

struct CertificateUnavailable : Error {
  explicit CertificateUnavailable(const std::string& why)
      : Error("certificate unavailable: " + why) {}
};

struct DeadState : Error {
  std::vector<std::string> words;
  explicit DeadState(std::vector<std::string> words_)
      : Error("states violate the in/out-degree assumption: " + join(words_)),
        words(std::move(words_)) {}

 private:
  static std::string join(const std::vector<std::string>& ws) {
    std::string s;
    for (const auto& w : ws) {
      if (!s.empty()) s += ", ";
      s += w;
    }
    return s;
  }
};

struct AbsoluteContinuityViolated : Error {
  int index;
  explicit AbsoluteContinuityViolated(int index_)
      : Error("nu has mass at index " + std::to_string(index_) +
              " where the reference measure vanishes"),
        index(index_) {}
};

struct SchemaError : Error {
  std::string field;
  SchemaError(std::string field_, const std::string& why)
      : Error("problem file field '" + field_ + "': " + why), field(std::move(field_)) {}
};

}  // namespace kantor
