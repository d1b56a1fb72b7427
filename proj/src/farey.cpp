#include <map>

#include "rspec/words.hpp"

namespace rspec {

namespace {

Branch make_branch(const GeneratorWord& u, Ray ray, Integer k) {
  const IntMatrix2 m = word_to_matrix(u);
  const LatticePoint origin = apply_point(m, {1, 1});
  const LatticePoint direction = ray == Ray::LInf ? LatticePoint{m.b, m.d} : LatticePoint{m.a, m.c};
  return {u, ray, std::move(k), origin, direction};
}

ContinuedFraction word_form_of(const ProjectiveRational& x) {
  return to_word_form(cf_from_rational(x));
}

void require_branch_point(const ContinuedFraction& wf) {
  if (!is_word_form(wf)) throw std::invalid_argument("expected a word-form continued fraction");
  if (wf.size() == 1 && wf[0] <= 1)
    throw DomainError("RootPoint", "(1,0) and (1,1) have no mother/daughter branches");
}

ProjectiveRational eval(std::vector<Integer> q) { return rational_from_cf(q); }

}  // namespace

NodeBranches find_branches(const LatticePoint& m) {
  if (m.q < 1 || m.p < 0 || !m.is_prime())
    throw std::invalid_argument("expected a prime point " + m.to_string() + " in the positive cone");
  if (m.q == 1 && m.p <= 1)
    throw DomainError("RootPoint", "(1,0) and (1,1) have no mother/daughter branches");
  const GeneratorWord w = word_from_cf(word_form_of(m.slope()));

  std::vector<Branch> found;
  GeneratorWord u;
  LatticePoint v = m;
  // empty prefix: both rays allowed
  if (v.q == 1 && v.p >= 1) found.push_back(make_branch(u, Ray::LInf, v.p));
  if (v.p == 1 && v.q >= 1) found.push_back(make_branch(u, Ray::L0, v.q));
  for (const Run& r : w.runs()) {
    // After peeling j letters of the run, u ends in that letter, so only the
    // ray not excluded by it is tested. The j solving the equation is unique.
    if (r.letter == Letter::T) {
      // v_j = (q, p - j q) = (k, 1)
      const Integer num = v.p - 1;
      if (num >= 0 && num % v.q == 0) {
        const Integer j = num / v.q;
        if (j >= 1 && j <= r.exponent) {
          GeneratorWord prefix = u;
          prefix.append(Letter::T, j);
          found.push_back(make_branch(prefix, Ray::L0, v.q));
        }
      }
      v.p -= r.exponent * v.q;
    } else {
      // v_j = (q - j p, p) = (1, k)
      const Integer num = v.q - 1;
      if (v.p >= 1 && num >= 0 && num % v.p == 0) {
        const Integer j = num / v.p;
        if (j >= 1 && j <= r.exponent) {
          GeneratorWord prefix = u;
          prefix.append(Letter::J, j);
          found.push_back(make_branch(prefix, Ray::LInf, v.p));
        }
      }
      v.q -= r.exponent * v.p;
    }
    u.append(r.letter, r.exponent);
  }

  std::optional<Branch> mother, daughter;
  for (Branch& b : found) {
    auto& slot = b.k == 1 ? daughter : mother;
    if (slot) throw std::logic_error("two candidate branches of the same kind at " + m.to_string());
    slot = std::move(b);
  }
  if (!mother || !daughter) throw std::logic_error("missing branch at " + m.to_string());
  return {std::move(*mother), std::move(*daughter)};
}

ProjectiveRational mother_origin(const ContinuedFraction& cf) {
  const ContinuedFraction wf = to_word_form(cf);
  require_branch_point(wf);
  const std::size_t len = wf.size();
  std::vector<Integer> q(wf.quotients.begin(), wf.quotients.end() - 1);
  if (wf[len - 1] > 1) {
    q.push_back(1);
  } else {
    q.pop_back();
    q.back() += 1;
  }
  return eval(q);
}

ProjectiveRational mother_slope(const ContinuedFraction& cf) {
  const ContinuedFraction wf = to_word_form(cf);
  require_branch_point(wf);
  const std::size_t len = wf.size();
  std::vector<Integer> q{0};
  if (wf[len - 1] > 1) {
    q.insert(q.end(), wf.quotients.begin(), wf.quotients.end() - 1);
    if (q.size() > 1) q.back() -= 1;
    q.push_back(1);
  } else {
    q.insert(q.end(), wf.quotients.begin(), wf.quotients.end() - 2);
  }
  return eval(q);
}

ProjectiveRational daughter_slope(const ContinuedFraction& cf) {
  const ContinuedFraction wf = to_word_form(cf);
  require_branch_point(wf);
  std::vector<Integer> q = wf.quotients;
  if (q.back() > 1) {
    q.back() -= 1;
  } else {
    q.pop_back();
  }
  return eval(q);
}

std::vector<BranchCheck> check_branch_formulas(const ProjectiveRational& x) {
  const ContinuedFraction wf = word_form_of(x);
  const NodeBranches b = find_branches(point_of(x));
  std::vector<BranchCheck> out;
  auto add = [&](std::string name, ProjectiveRational formula, ProjectiveRational oracle) {
    const bool differ = formula != oracle;
    out.push_back({std::move(name), std::move(formula), std::move(oracle), differ});
  };
  add("mother_origin", mother_origin(wf), b.mother.origin.slope());
  add("mother_slope", mother_slope(wf), b.mother.slope());
  add("daughter_slope", daughter_slope(wf), b.daughter.slope());
  return out;
}

std::optional<std::size_t> FareyTree::find(const LatticePoint& pt) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), pt,
                             [](const FareyNode& n, const LatticePoint& p) { return n.point < p; });
  if (it == nodes.end() || !(it->point == pt)) return std::nullopt;
  return static_cast<std::size_t>(it - nodes.begin());
}

FareyTree build_farey_tree(const Integer& q_limit, const Integer& value_limit) {
  if (q_limit < 1) throw std::invalid_argument("q_limit must be at least 1");
  if (value_limit < 1) throw std::invalid_argument("value bound must be at least 1");
  FareyTree tree;
  for (Integer q = 1; q <= q_limit; ++q) {
    for (Integer p = 0; p <= value_limit * q; ++p) {
      if (gcd(q, p) != 1) continue;
      const ProjectiveRational x(p, q);
      const ContinuedFraction wf = word_form_of(x);
      tree.nodes.push_back({{q, p}, word_from_cf(wf), wf, std::nullopt});
    }
  }
  for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
    const LatticePoint& m = tree.nodes[i].point;
    LatticePoint parent{1, 0};
    if (!(m == LatticePoint{1, 1})) {
      const Branch mother = find_branches(m).mother;
      parent = {m.q - mother.direction.q, m.p - mother.direction.p};
    }
    const auto j = tree.find(parent);
    if (!j) throw std::logic_error("parent " + parent.to_string() + " outside the tree");
    tree.nodes[i].parent = *j;
    tree.edges.emplace_back(*j, i);
  }
  return tree;
}

}  // namespace rspec
