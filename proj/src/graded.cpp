#include "hallforge/graded.hpp"

#include <charconv>

namespace hallforge::cpx {

PeriodSpec::PeriodSpec(int t) : t_(t) {
  if (t < 0) throw UnsupportedPeriod("period must be 0 or an odd positive integer, got " + std::to_string(t));
  if (t > 0 && t % 2 == 0)
    throw UnsupportedPeriod("even period " + std::to_string(t) + " is not supported; use 0 or an odd period");
}

int PeriodSpec::reduce(int degree) const noexcept {
  if (t_ == 0) return degree;
  const int r = degree % t_;
  return r < 0 ? r + t_ : r;
}

GradedObject GradedObject::stalk(PeriodSpec period, const IsoClassId& x, int degree) {
  GradedObject g(period);
  g.set(degree, x);
  return g;
}

IsoClassId GradedObject::at(int degree, std::size_t vertices) const {
  auto it = parts.find(PeriodSpec(t).reduce(degree));
  if (it != parts.end()) return it->second;
  return IsoClassId{DimVec::zeros(vertices), 0};
}

void GradedObject::set(int degree, const IsoClassId& x) {
  const int d = PeriodSpec(t).reduce(degree);
  if (x.is_zero())
    parts.erase(d);
  else
    parts[d] = x;
}

GradedObject GradedObject::shifted(int s) const {
  GradedObject out(PeriodSpec{t});
  for (const auto& [d, x] : parts) out.set(d - s, x);
  return out;
}

DimVec GradedObject::total_dims(std::size_t vertices) const {
  DimVec sum = DimVec::zeros(vertices);
  for (const auto& [d, x] : parts) sum = sum + x.dims;
  return sum;
}

int GradedObject::width() const {
  if (parts.empty()) return 0;
  return parts.rbegin()->first - parts.begin()->first + 1;
}

std::string to_string(const GradedObject& x) {
  std::string out = "[";
  bool first = true;
  for (const auto& [d, c] : x.parts) {
    if (!first) out += ", ";
    first = false;
    out += repcat::to_string(c) + "@" + std::to_string(d);
  }
  return out + "]";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

GradedObject parse_graded(const std::string& text, PeriodSpec period, std::size_t vertices) {
  const std::string s = trim(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ParseError("graded object must be written as [class@degree, ...]: '" + text + "'");
  GradedObject out(period);
  const std::string body = s.substr(1, s.size() - 2);
  if (trim(body).empty()) return out;
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t comma = body.find(',', start);
    if (comma == std::string::npos) comma = body.size();
    const std::string item = trim(body.substr(start, comma - start));
    const auto at = item.rfind('@');
    if (at == std::string::npos) throw ParseError("missing '@degree' in '" + item + "'");
    const IsoClassId id = repcat::parse_class_id(item.substr(0, at), vertices);
    int degree = 0;
    const std::string deg = item.substr(at + 1);
    auto [ptr, ec] = std::from_chars(deg.data(), deg.data() + deg.size(), degree);
    if (ec != std::errc() || ptr != deg.data() + deg.size()) throw ParseError("bad degree in '" + item + "'");
    if (out.parts.count(period.reduce(degree)))
      throw ParseError("degree " + std::to_string(degree) + " given twice in '" + text + "'");
    out.set(degree, id);
    start = comma + 1;
  }
  return out;
}

}  // namespace hallforge::cpx
