#include "vieta/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace vieta {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string trajectory_csv(const std::vector<TrajectorySample>& samples) {
  std::ostringstream os;
  os << "t,particle_id,kind,re_x,im_x,re_y,im_y,re_vx,im_vx,re_vy,im_vy,"
        "re_ax,im_ax,re_ay,im_ay,near_event\n";
  for (const auto& s : samples) {
    const std::string t = format_double(s.t.to_double());
    const bool with_derivs = !s.near_event && !s.derivs.empty();
    for (std::size_t i = 0; i < s.particles.size(); ++i) {
      const auto& p = s.particles[i];
      os << t << ',' << p.id << ','
         << (p.kind == CoordKind::Real ? 'R' : 'C') << ','
         << format_double(p.x.real()) << ',' << format_double(p.x.imag())
         << ',' << format_double(p.y.real()) << ','
         << format_double(p.y.imag()) << ',';
      if (with_derivs) {
        const auto& d = s.derivs[i];
        os << format_double(d.vx.real()) << ',' << format_double(d.vx.imag())
           << ',' << format_double(d.vy.real()) << ','
           << format_double(d.vy.imag()) << ',' << format_double(d.ax.real())
           << ',' << format_double(d.ax.imag()) << ','
           << format_double(d.ay.real()) << ',' << format_double(d.ay.imag());
      } else {
        os << ",,,,,,,"; // eight empty derivative fields
      }
      os << ',' << (s.near_event ? 1 : 0) << '\n';
    }
  }
  return os.str();
}

namespace {

const char* kind_name(EventKind k) {
  switch (k) {
    case EventKind::Creation: return "creation";
    case EventKind::Annihilation: return "annihilation";
    default: return "degenerate";
  }
}

} // namespace

std::string events_json(const std::vector<Event>& events) {
  json arr = json::array();
  for (const auto& e : events) {
    json j;
    j["t_lo"] = e.t_lo.str();
    j["t_hi"] = e.t_hi.str();
    j["t_mid_approx"] = e.midpoint().to_double();
    j["exact"] = e.exact;
    j["kind"] = kind_name(e.kind);
    j["count_change_x"] = e.count_change_x;
    j["count_change_y"] = e.count_change_y;
    j["location"] = {{"x", e.x}, {"y", e.y}};
    j["involved"] = e.involved;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string report_json(const std::vector<ConservationReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    json j;
    j["law"] = r.law;
    json exp;
    exp["exact"] = r.expected_exact ? json(*r.expected_exact) : json(nullptr);
    exp["approx"] =
        r.expected_approx ? json(*r.expected_approx) : json(nullptr);
    j["expected"] = std::move(exp);
    j["max_drift"] = r.max_drift;
    j["max_imag"] = r.max_imag;
    j["tolerance"] = r.tolerance;
    j["verdict"] = r.pass ? "pass" : "fail";
    if (!r.details.empty()) j["details"] = r.details;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string eliminants_json(const Eliminants& el, const UPolyQ& disc_x,
                            const UPolyQ& disc_y, const UPolyQ& common) {
  json j;
  j["eliminant_x"] = el.in_x.poly.str();
  j["eliminant_y"] = el.in_y.poly.str();
  j["lead_x"] = el.in_x.lead.str();
  j["lead_y"] = el.in_y.lead.str();
  j["leading_form_resultant"] = el.f.str();
  j["degree_x"] = el.in_x.poly.degree();
  j["degree_y"] = el.in_y.poly.degree();
  j["discriminant_x"] = disc_x.str();
  j["discriminant_y"] = disc_y.str();
  j["common_factor"] = common.str();
  j["common_factor_degree"] = common.degree();
  return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  fs::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    if (ec)
      throw std::runtime_error("cannot create directory " +
                               p.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace vieta
