#include "rspec/io.hpp"

#include <charconv>
#include <sstream>

namespace rspec {

std::string format_double(double x, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, digits);
  return std::string(buf, res.ptr);
}

Json to_json(const LockingZone& zone) {
  return {{"center", zone.center.to_string()},
          {"nu_minus", zone.nu_minus.to_string()},
          {"nu_plus", zone.nu_plus.to_string()},
          {"a", zone.a_used.str()}};
}

Json to_json(const ZoneClass& cls) {
  Json orbit = Json::array();
  for (const auto& x : cls.orbit) orbit.push_back(x.to_string());
  Json period = Json::array();
  for (const auto& q : cls.period) period.push_back(q.str());
  return {{"tag", to_string(cls.tag)}, {"orbit", orbit}, {"period", period}, {"depth_used", cls.depth_used}};
}

namespace {

std::string point_label(const LatticePoint& pt) { return pt.p.str() + "/" + pt.q.str(); }

Json edges_json(const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Json out = Json::array();
  for (const auto& [from, to] : edges) out.push_back({from, to});
  return out;
}

Json node_json(const FareyNode& n) {
  return {{"p", n.point.p.str()},
          {"q", n.point.q.str()},
          {"value", point_label(n.point)},
          {"cf", n.cf.to_string()},
          {"word", n.word.to_string()}};
}

void dot_edges(std::ostream& out, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  for (const auto& [from, to] : edges) out << "  n" << from << " -> n" << to << ";\n";
}

}  // namespace

Json to_json(const FareyTree& tree) {
  Json nodes = Json::array();
  for (const FareyNode& n : tree.nodes) nodes.push_back(node_json(n));
  return {{"nodes", nodes}, {"edges", edges_json(tree.edges)}};
}

std::string to_dot(const FareyTree& tree) {
  std::ostringstream out;
  out << "digraph farey {\n";
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const FareyNode& n = tree.nodes[i];
    out << "  n" << i << " [label=\"" << point_label(n.point) << ' ' << n.cf.to_string() << "\"];\n";
  }
  dot_edges(out, tree.edges);
  out << "}\n";
  return out.str();
}

Json to_json(const ResolutionTree& tree) {
  Json nodes = Json::array();
  for (const ResolutionNode& n : tree.nodes) {
    Json j = node_json(n.node);
    j["nu_minus"] = n.zone.nu_minus.to_string();
    j["nu_plus"] = n.zone.nu_plus.to_string();
    nodes.push_back(std::move(j));
  }
  return {{"a", tree.a.str()}, {"nodes", nodes}, {"edges", edges_json(tree.edges)}};
}

std::string to_dot(const ResolutionTree& tree) {
  std::ostringstream out;
  out << "digraph resolution {\n";
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const ResolutionNode& n = tree.nodes[i];
    out << "  n" << i << " [label=\"" << point_label(n.node.point) << ' ' << n.node.cf.to_string()
        << "\", nu_minus=\"" << n.zone.nu_minus.to_string() << "\", nu_plus=\""
        << n.zone.nu_plus.to_string() << "\"];\n";
  }
  dot_edges(out, tree.edges);
  out << "}\n";
  return out.str();
}

Json to_json(const Spectrum& spectrum) {
  Json zones = Json::array();
  for (const SpectrumZone& z : spectrum.zones)
    zones.push_back({{"center", z.zone.center.to_string()},
                     {"nu_minus", z.zone.nu_minus.to_string()},
                     {"nu_plus", z.zone.nu_plus.to_string()},
                     {"a_max", z.a_max.convert_to<long long>()}});
  Json fuzzy = Json::array();
  Json gaps = Json::array();
  for (const SpectrumGap& g : spectrum.gaps) {
    gaps.push_back({{"lo", g.lo.to_string()}, {"hi", g.hi.to_string()}, {"depth", g.depth}, {"fuzzy", g.fuzzy}});
    if (g.fuzzy) fuzzy.push_back({{"lo", g.lo.to_string()}, {"hi", g.hi.to_string()}});
  }
  return {{"f1", spectrum.cfg.f1.to_string()},
          {"fc", spectrum.cfg.fc.to_string()},
          {"lo", spectrum.lo.to_string()},
          {"hi", spectrum.hi.to_string()},
          {"zones", zones},
          {"fuzzy", fuzzy},
          {"gaps", gaps}};
}

void write_jump_csv(std::ostream& out, const std::vector<JumpRow>& rows) {
  out << "a,p,q,f_hz\n";
  for (const JumpRow& r : rows)
    out << r.a << ',' << r.p << ',' << r.q << ',' << to_decimal_string(r.f, 6, true) << '\n';
}

void write_error_csv(std::ostream& out, const std::vector<ErrorSample>& samples, unsigned digits) {
  out << "x_num,x_den,x_decimal,error_decimal\n";
  for (const ErrorSample& s : samples)
    out << s.x.num() << ',' << s.x.den() << ',' << to_decimal_string(s.x, digits) << ','
        << to_decimal_string(s.error, digits) << '\n';
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, double tolerance) {
  out << "f0_hz,nu_num,nu_den,detected_hz,predicted_center,zone_hit\n";
  for (const SweepRow& r : rows) {
    out << to_decimal_string(r.f0, 9, true) << ',' << r.nu.num() << ',' << r.nu.den() << ','
        << (r.detected ? format_double(*r.detected) : "") << ','
        << (r.center ? r.center->to_string() : "") << ',' << (agrees(r, tolerance) ? 1 : 0) << '\n';
  }
}

}  // namespace rspec
