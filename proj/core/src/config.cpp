#include "mmwt/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "mmwt/errors.hpp"

namespace mmwt {
namespace {

struct Field {
  const char* section;
  const char* key;
  std::function<double(const NetworkParams&)> get;
  std::function<void(NetworkParams&, double)> set;
};

template <typename Member>
Field plain(const char* section, const char* key, Member member) {
  return {section, key, [member](const NetworkParams& p) { return static_cast<double>(std::invoke(member, p)); },
          [member](NetworkParams& p, double v) { std::invoke(member, p) = v; }};
}

Field decibel(const char* section, const char* key, double NetworkParams::*member) {
  return {section, key, [member](const NetworkParams& p) { return linear_to_db(p.*member); },
          [member](NetworkParams& p, double v) { p.*member = db_to_linear(v); }};
}

void antenna_fields(std::vector<Field>& out, const char* section, SectorAntenna NetworkParams::*ant) {
  out.push_back({section, "main_db", [ant](const NetworkParams& p) { return (p.*ant).main_db; },
                 [ant](NetworkParams& p, double v) { (p.*ant).main_db = v; }});
  out.push_back({section, "side_db", [ant](const NetworkParams& p) { return (p.*ant).side_db; },
                 [ant](NetworkParams& p, double v) { (p.*ant).side_db = v; }});
  out.push_back({section, "beamwidth_deg", [ant](const NetworkParams& p) { return (p.*ant).beamwidth_deg; },
                 [ant](NetworkParams& p, double v) { (p.*ant).beamwidth_deg = v; }});
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(plain("network", "lambda_m", &NetworkParams::lambda_m));
    f.push_back(plain("network", "lambda_f", &NetworkParams::lambda_f));
    f.push_back(plain("network", "r_f", &NetworkParams::r_f));
    f.push_back(plain("network", "sigma2", &NetworkParams::sigma2));
    f.push_back(decibel("network", "ell_w_db", &NetworkParams::ell_w));
    f.push_back(plain("power", "p_m", &NetworkParams::p_m));
    f.push_back(plain("power", "p_f", &NetworkParams::p_f));
    f.push_back(plain("power", "p_cm", &NetworkParams::p_cm));
    f.push_back(plain("power", "p_cf", &NetworkParams::p_cf));
    f.push_back(plain("power", "eta_m", &NetworkParams::eta_m));
    f.push_back(plain("power", "eta_f", &NetworkParams::eta_f));
    f.push_back({"path_loss", "c_los_db", [](const NetworkParams& p) { return linear_to_db(p.path_loss.c_los); },
                 [](NetworkParams& p, double v) { p.path_loss.c_los = db_to_linear(v); }});
    f.push_back({"path_loss", "c_nlos_db", [](const NetworkParams& p) { return linear_to_db(p.path_loss.c_nlos); },
                 [](NetworkParams& p, double v) { p.path_loss.c_nlos = db_to_linear(v); }});
    f.push_back({"path_loss", "alpha_los", [](const NetworkParams& p) { return p.path_loss.alpha_los; },
                 [](NetworkParams& p, double v) { p.path_loss.alpha_los = v; }});
    f.push_back({"path_loss", "alpha_nlos", [](const NetworkParams& p) { return p.path_loss.alpha_nlos; },
                 [](NetworkParams& p, double v) { p.path_loss.alpha_nlos = v; }});
    f.push_back({"path_loss", "beta", [](const NetworkParams& p) { return p.path_loss.beta; },
                 [](NetworkParams& p, double v) { p.path_loss.beta = v; }});
    f.push_back({"vertical", "theta_3db", [](const NetworkParams& p) { return p.vertical.theta_3db; },
                 [](NetworkParams& p, double v) { p.vertical.theta_3db = v; }});
    f.push_back({"vertical", "sll_db", [](const NetworkParams& p) { return p.vertical.sll_db; },
                 [](NetworkParams& p, double v) { p.vertical.sll_db = v; }});
    f.push_back({"vertical", "h_eff", [](const NetworkParams& p) { return p.vertical.h_eff; },
                 [](NetworkParams& p, double v) { p.vertical.h_eff = v; }});
    f.push_back({"vertical", "enabled", [](const NetworkParams& p) { return p.vertical_pattern ? 1.0 : 0.0; },
                 [](NetworkParams& p, double v) {
                   if (v != 0.0 && v != 1.0) throw ConfigError("vertical.enabled must be 0 or 1");
                   p.vertical_pattern = v != 0.0;
                 }});
    f.push_back({"fading", "nakagami_m", [](const NetworkParams& p) { return double(p.fading.nakagami_m); },
                 [](NetworkParams& p, double v) {
                   if (v < 1.0 || v != std::floor(v)) throw ConfigError("fading.nakagami_m must be a positive integer");
                   p.fading.nakagami_m = static_cast<int>(v);
                 }});
    antenna_fields(f, "macro_tx", &NetworkParams::macro_tx);
    antenna_fields(f, "macro_rx", &NetworkParams::macro_rx);
    antenna_fields(f, "femto_tx", &NetworkParams::femto_tx);
    antenna_fields(f, "femto_rx", &NetworkParams::femto_rx);
    return f;
  }();
  return table;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text, int line) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v))
    throw ConfigError("not a finite number: '" + std::string(text) + "'", line);
  return v;
}

void assign(NetworkParams& p, std::string_view section, std::string_view key, std::string_view value, int line) {
  for (const auto& f : fields()) {
    if (section == f.section && key == f.key) {
      try {
        f.set(p, parse_number(value, line));
      } catch (const ConfigError& e) {
        if (e.line() > 0) throw;
        throw ConfigError(e.what(), line);
      }
      return;
    }
  }
  throw ConfigError("unknown key '" + std::string(section) + "." + std::string(key) + "'", line);
}

}  // namespace

NetworkParams parse_params(std::string_view text, NetworkParams base) {
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) throw ConfigError("empty section name", line_no);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    if (section.empty()) throw ConfigError("key outside of any [section]", line_no);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError("expected 'key = value'", line_no);
    assign(base, section, key, value, line_no);
  }
  try {
    base.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid parameters: ") + e.what());
  }
  return base;
}

NetworkParams load_params(const std::filesystem::path& path, NetworkParams base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_params(buf.str(), base);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void apply_override(NetworkParams& params, std::string_view assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string_view::npos || dot == std::string_view::npos || dot > eq)
    throw ConfigError("override must look like section.key=value: '" + std::string(assignment) + "'");
  assign(params, trim(assignment.substr(0, dot)), trim(assignment.substr(dot + 1, eq - dot - 1)),
         trim(assignment.substr(eq + 1)), 0);
}

std::string to_config_text(const NetworkParams& params) {
  std::ostringstream out;
  out << std::setprecision(17);
  std::string current;
  for (const auto& f : fields()) {
    if (current != f.section) {
      if (!current.empty()) out << '\n';
      current = f.section;
      out << '[' << current << "]\n";
    }
    out << f.key << " = " << f.get(params) << '\n';
  }
  return out.str();
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& f : fields()) keys.push_back(std::string(f.section) + "." + f.key);
  return keys;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const NetworkParams& params) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(to_config_text(params));
  return out.str();
}

}  // namespace mmwt
