#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ams {

// Error categories map onto the CLI exit-code contract:
// 2 geometry rejection, 3 synthesis failure, 4 statistical failure,
// 1 everything else.
enum class ErrorKind { invalid = 1, geometry = 2, synthesis = 3, statistical = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Least-squares fit of log(y) against log(x).
inline FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorKind::invalid,
          "fit_loglog: need >= 2 matching samples");
  double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] > 0.0 && y[i] > 0.0, ErrorKind::invalid, "fit_loglog: nonpositive sample");
    double lx = std::log(x[i]);
    double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    syy += ly * ly;
    sxy += lx * ly;
  }
  FitResult out;
  out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  out.intercept = (sy - out.slope * sx) / n;
  double r = (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
  out.r2 = r * r;
  return out;
}

// Sum with a fixed chunking scheme so the result is independent of how many
// threads produced the partials. Chunk partials are accumulated in index
// order; only the per-chunk loops may run concurrently.
inline constexpr std::size_t kSumChunk = 8192;

inline double chunked_sum(const std::vector<double>& v) {
  std::size_t nchunks = (v.size() + kSumChunk - 1) / kSumChunk;
  std::vector<double> partial(nchunks, 0.0);
  for (std::size_t c = 0; c < nchunks; ++c) {
    std::size_t lo = c * kSumChunk;
    std::size_t hi = std::min(v.size(), lo + kSumChunk);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    partial[c] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace ams
