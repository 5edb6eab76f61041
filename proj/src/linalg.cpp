#include "cxqt/linalg.hpp"

namespace cxqt {

ExactPoly parse_poly(std::string_view text) {
  if (text == "0") return {};
  std::vector<QSqrt5> coeffs;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(',', start), text.size());
    coeffs.push_back(QSqrt5::parse(text.substr(start, end - start)));
    start = end + 1;
  }
  return ExactPoly(std::move(coeffs));
}

std::string matrix_str(const ExactMatrix& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += "; ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += m(i, j).str();
    }
  }
  return out + "]";
}

}  // namespace cxqt
