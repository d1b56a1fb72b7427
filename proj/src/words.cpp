#include "rspec/words.hpp"

#include <regex>

namespace rspec {

GeneratorWord::GeneratorWord(const std::vector<Run>& runs) {
  for (const Run& r : runs) {
    if (r.exponent < 0) throw std::invalid_argument("negative exponent in word");
    append(r.letter, r.exponent);
  }
}

void GeneratorWord::append(Letter letter, const Integer& exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponent in word");
  if (exponent == 0) return;
  if (!runs_.empty() && runs_.back().letter == letter) {
    runs_.back().exponent += exponent;
  } else {
    runs_.push_back({letter, exponent});
  }
}

std::string GeneratorWord::to_string() const {
  if (runs_.empty()) return "id";
  std::string out;
  for (const Run& r : runs_) {
    if (!out.empty()) out += ' ';
    out += (r.letter == Letter::T ? "T^" : "J^") + r.exponent.str();
  }
  return out;
}

GeneratorWord parse_word(std::string_view text) {
  static const std::regex token(R"(\s*([TJ])(?:\^(\d+))?\s*)");
  const std::string s(text);
  GeneratorWord w;
  if (std::regex_match(s, std::regex(R"(\s*(id)?\s*)"))) return w;
  auto it = s.cbegin();
  std::smatch m;
  while (it != s.cend()) {
    if (!std::regex_search(it, s.cend(), m, token, std::regex_constants::match_continuous))
      throw std::invalid_argument("malformed word: '" + s + "'");
    const Integer e = m[2].matched ? parse_integer(m[2].str()) : Integer(1);
    w.append(m[1].str() == "T" ? Letter::T : Letter::J, e);
    it = m[0].second;
  }
  return w;
}

IntMatrix2 operator*(const IntMatrix2& x, const IntMatrix2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

LatticePoint point_of(const ProjectiveRational& x) { return {x.den(), x.num()}; }

IntMatrix2 word_to_matrix(const GeneratorWord& w) {
  IntMatrix2 m = IntMatrix2::identity();
  for (const Run& r : w.runs()) {
    const IntMatrix2 power = r.letter == Letter::T ? IntMatrix2{1, 0, r.exponent, 1}
                                                   : IntMatrix2{1, r.exponent, 0, 1};
    m = m * power;
  }
  return m;
}

LatticePoint apply_point(const IntMatrix2& m, const LatticePoint& pt) {
  return {m.a * pt.q + m.b * pt.p, m.c * pt.q + m.d * pt.p};
}

ProjectiveRational mobius(const IntMatrix2& m, const ProjectiveRational& z) {
  const LatticePoint image = apply_point(m, point_of(z));
  if (image.q == 0 && image.p == 0)
    throw DomainError("Indeterminate", "singular matrix sends the point to (0,0)");
  return image.slope();
}

GeneratorWord word_from_cf(const ContinuedFraction& cf) {
  const ContinuedFraction wf = to_word_form(cf);
  GeneratorWord w;
  for (std::size_t i = 0; i < wf.size(); ++i) w.append(i % 2 == 0 ? Letter::T : Letter::J, wf[i]);
  return w;
}

ContinuedFraction cf_from_word(const GeneratorWord& w) {
  std::vector<Run> runs = w.runs();
  if (!runs.empty() && runs.back().letter == Letter::J) runs.pop_back();
  ContinuedFraction cf;
  if (runs.empty()) return ContinuedFraction{0};
  if (runs.front().letter == Letter::J) cf.quotients.emplace_back(0);
  for (const Run& r : runs) cf.quotients.push_back(r.exponent);
  return cf;
}

}  // namespace rspec
