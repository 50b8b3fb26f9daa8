#include "lifescope/common.hpp"

#include <sstream>

namespace lifescope {

std::string format_diagnostic(const std::string& file, const Diagnostic& d) {
  std::ostringstream out;
  out << file << ':' << d.line << ": " << d.message;
  return out.str();
}

double squared_norm(const SparseVector& v) {
  double sum = 0.0;
  for (const auto& e : v) sum += e.value * e.value;
  return sum;
}

double squared_distance(const SparseVector& a, const SparseVector& b) {
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    double diff;
    if (j == b.size() || (i < a.size() && a[i].index < b[j].index)) {
      diff = a[i++].value;
    } else if (i == a.size() || b[j].index < a[i].index) {
      diff = b[j++].value;
    } else {
      diff = a[i++].value - b[j++].value;
    }
    sum += diff * diff;
  }
  return sum;
}

}  // namespace lifescope
