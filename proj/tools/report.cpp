#include "report.hpp"

#include <openssl/evp.h>

#include <iomanip>
#include <sstream>

namespace odeinv::cli {

json to_json(const Rational &q) { return to_string(q); }

json to_json(const TensorComp &t) {
  json comps = json::object();
  for (const auto &[k, v] : t.entries())
    comps[std::to_string(k.first) + "|" + std::to_string(k.second)] = to_string(v);
  return {{"signature", {{"r", t.r()}, {"s", t.s()}, {"w", t.w()}}}, {"components", comps}};
}

json to_json(const ScaledRational &v, const Rational &F3) {
  return {{"r", to_string(v.r)}, {"e", v.e}, {"approx", approximate(v, F3)}};
}

json to_json(const RSectionJet &s) {
  json u = json::object();
  for (int i = 1; i <= 4; ++i)
    for (int d = 0; d <= s.order(); ++d)
      for (int n = 0; n <= d; ++n)
        u["u" + std::to_string(i) + "(" + std::to_string(d - n) + "," + std::to_string(n) + ")"] =
            to_string(s.u(i, d - n, n));
  return {{"base", {to_string(s.base(1)), to_string(s.base(2))}}, {"order", s.order()}, {"u", u}};
}

json to_json(const MapJet &f) {
  json out = {{"base", {to_string(f.x0()), to_string(f.y0())}}, {"order", f.order()}};
  for (int i = 1; i <= 2; ++i) {
    json c = json::object();
    const TaylorJet2 &t = f.component(i);
    for (int d = 0; d <= t.order(); ++d)
      for (int n = 0; n <= d; ++n)
        if (t.coeff(d - n, n) != 0)
          c["(" + std::to_string(d - n) + "," + std::to_string(n) + ")"] = to_string(t.coeff(d - n, n));
    out["f" + std::to_string(i)] = c;
  }
  return out;
}

json to_json(const Point &p) { return {to_string(p.first), to_string(p.second)}; }

std::string sha256_hex(const std::string &bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i)
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

namespace {

std::string scalar_text(const json &v) {
  if (v.is_string())
    return v.get<std::string>();
  return v.dump();
}

bool is_leaf_array(const json &v) {
  if (!v.is_array())
    return false;
  for (const auto &e : v)
    if (e.is_object() || e.is_array())
      return false;
  return true;
}

void render(const json &v, int depth, std::ostringstream &os) {
  std::string pad(2 * depth, ' ');
  auto item = [&](const std::string &key, const json &child) {
    if (child.is_object() && child.contains("r") && child.contains("e") && child.size() == 3) {
      os << pad << key << ": " << child["r"].get<std::string>() << " t^" << child["e"].get<int>()
         << "  (~" << child["approx"].get<double>() << ")\n";
    } else if (is_leaf_array(child)) {
      os << pad << key << ": " << (child.empty() ? "(none)" : "");
      for (std::size_t i = 0; i < child.size(); ++i)
        os << (i ? ", " : "") << scalar_text(child[i]);
      os << "\n";
    } else if (child.is_object() || child.is_array()) {
      os << pad << key << ":" << (child.empty() ? " (none)" : "") << "\n";
      render(child, depth + 1, os);
    } else {
      os << pad << key << ": " << scalar_text(child) << "\n";
    }
  };
  if (v.is_object())
    for (const auto &[k, child] : v.items())
      item(k, child);
  else if (v.is_array())
    for (std::size_t i = 0; i < v.size(); ++i)
      item("-", v[i]);
}

} // namespace

std::string render_text(const json &report) {
  std::ostringstream os;
  render(report, 0, os);
  return os.str();
}

} // namespace odeinv::cli
