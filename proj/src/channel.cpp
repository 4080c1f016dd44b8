#include "icfb/channel.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "icfb/hermitian.hpp"

namespace icfb {

namespace {

using nlohmann::ordered_json;

void check_dims(ValidationReport& rep, const char* name, const CMatrix& m, int rows,
                int cols) {
  if (m.rows() != rows || m.cols() != cols) {
    std::ostringstream os;
    os << name << ": expected " << rows << "x" << cols << ", got " << m.rows() << "x"
       << m.cols();
    rep.violations.push_back(os.str());
  } else if (!m.allFinite()) {
    rep.violations.push_back(std::string(name) + ": non-finite entry");
  }
}

void check_gain(ValidationReport& rep, const char* name, double rho) {
  if (!(rho >= 0.0) || !std::isfinite(rho))
    rep.violations.push_back(std::string(name) + ": must be finite and nonnegative");
}

ordered_json matrix_to_json(const CMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const ordered_json& j, const std::string& name, int rows,
                         int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw SchemaError(name + ": expected " + std::to_string(rows) + " rows");
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const auto& row = j.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw SchemaError(name + " row " + std::to_string(r) + ": expected " +
                        std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c) {
      const auto& e = row.at(c);
      if (!e.is_array() || e.size() != 2 || !e.at(0).is_number() || !e.at(1).is_number())
        throw SchemaError(name + "[" + std::to_string(r) + "][" + std::to_string(c) +
                          "]: expected [re, im] pair");
      m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

double require_number(const ordered_json& obj, const std::string& key) {
  if (!obj.contains(key)) throw SchemaError("missing field \"" + key + "\"");
  if (!obj.at(key).is_number()) throw SchemaError("field \"" + key + "\" must be a number");
  return obj.at(key).get<double>();
}

int require_int(const ordered_json& obj, const std::string& key) {
  if (!obj.contains(key)) throw SchemaError("missing field \"" + key + "\"");
  if (!obj.at(key).is_number_integer())
    throw SchemaError("field \"" + key + "\" must be an integer");
  return obj.at(key).get<int>();
}

void reject_unknown(const ordered_json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) known = true;
    if (!known) throw SchemaError(where + ": unknown key \"" + it.key() + "\"");
  }
}

}  // namespace

ScalingExponents::ScalingExponents(double a11_, double a12_, double a21_, double a22_)
    : a11(a11_), a12(a12_), a21(a21_), a22(a22_) {
  auto nonneg = [](double a) { return std::isfinite(a) && a >= 0.0; };
  if (!nonneg(a11) || !nonneg(a12) || !nonneg(a21) || !nonneg(a22))
    throw SchemaError("ScalingExponents: all exponents must be finite and nonnegative");
  // A zero direct exponent leaves the prelog of that user's rate undefined.
  if (!(a11 > 0.0) || !(a22 > 0.0))
    throw SchemaError("ScalingExponents: direct exponents a11 and a22 must be positive");
}

ValidationReport validate(const ChannelInstance& ch) {
  ValidationReport rep;
  const auto& c = ch.config;
  if (c.m1 < 1 || c.n1 < 1 || c.m2 < 1 || c.n2 < 1)
    rep.violations.push_back("config: antenna counts must be >= 1");
  else {
    check_dims(rep, "h11", ch.h11, c.n1, c.m1);
    check_dims(rep, "h12", ch.h12, c.n2, c.m1);
    check_dims(rep, "h21", ch.h21, c.n1, c.m2);
    check_dims(rep, "h22", ch.h22, c.n2, c.m2);
  }
  check_gain(rep, "rho11", ch.gains.rho11);
  check_gain(rep, "rho12", ch.gains.rho12);
  check_gain(rep, "rho21", ch.gains.rho21);
  check_gain(rep, "rho22", ch.gains.rho22);
  return rep;
}

ChannelInstance reciprocal(const ChannelInstance& ch) {
  auto rep = validate(ch);
  if (!rep.ok()) throw SchemaError("reciprocal: invalid channel: " + rep.violations.front());
  ChannelInstance r;
  r.config = {ch.config.n1, ch.config.m1, ch.config.n2, ch.config.m2};
  r.h11 = ch.h11.transpose();
  r.h12 = ch.h21.transpose();
  r.h21 = ch.h12.transpose();
  r.h22 = ch.h22.transpose();
  r.gains = {ch.gains.rho11, ch.gains.rho21, ch.gains.rho12, ch.gains.rho22};
  return r;
}

ChannelInstance random_channel(const AntennaConfig& config, const LinkGains& gains,
                               std::uint64_t seed) {
  ChannelInstance ch;
  ch.config = config;
  ch.h11 = random_complex_matrix(config.n1, config.m1, derive_seed(seed, 11));
  ch.h12 = random_complex_matrix(config.n2, config.m1, derive_seed(seed, 12));
  ch.h21 = random_complex_matrix(config.n1, config.m2, derive_seed(seed, 21));
  ch.h22 = random_complex_matrix(config.n2, config.m2, derive_seed(seed, 22));
  ch.gains = gains;
  return ch;
}

ChannelInstance load_channel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open channel file: " + path);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("parse error in " + path + ": " + e.what());
  }
  reject_unknown(j, {"config", "gains", "h11", "h12", "h21", "h22"}, "channel file");
  if (!j.contains("config")) throw SchemaError("missing field \"config\"");
  if (!j.contains("gains")) throw SchemaError("missing field \"gains\"");
  const auto& jc = j.at("config");
  const auto& jg = j.at("gains");
  reject_unknown(jc, {"m1", "n1", "m2", "n2"}, "config");
  reject_unknown(jg, {"rho11", "rho12", "rho21", "rho22"}, "gains");

  ChannelInstance ch;
  ch.config.m1 = require_int(jc, "m1");
  ch.config.n1 = require_int(jc, "n1");
  ch.config.m2 = require_int(jc, "m2");
  ch.config.n2 = require_int(jc, "n2");
  ch.gains.rho11 = require_number(jg, "rho11");
  ch.gains.rho12 = require_number(jg, "rho12");
  ch.gains.rho21 = require_number(jg, "rho21");
  ch.gains.rho22 = require_number(jg, "rho22");
  for (const char* k : {"h11", "h12", "h21", "h22"})
    if (!j.contains(k)) throw SchemaError(std::string("missing field \"") + k + "\"");
  ch.h11 = matrix_from_json(j.at("h11"), "h11", ch.config.n1, ch.config.m1);
  ch.h12 = matrix_from_json(j.at("h12"), "h12", ch.config.n2, ch.config.m1);
  ch.h21 = matrix_from_json(j.at("h21"), "h21", ch.config.n1, ch.config.m2);
  ch.h22 = matrix_from_json(j.at("h22"), "h22", ch.config.n2, ch.config.m2);

  auto rep = validate(ch);
  if (!rep.ok()) throw SchemaError("channel file invalid: " + rep.violations.front());
  return ch;
}

std::string channel_json(const ChannelInstance& ch) {
  ordered_json j;
  j["config"] = {{"m1", ch.config.m1}, {"n1", ch.config.n1}, {"m2", ch.config.m2},
                 {"n2", ch.config.n2}};
  j["gains"] = {{"rho11", ch.gains.rho11}, {"rho12", ch.gains.rho12},
                {"rho21", ch.gains.rho21}, {"rho22", ch.gains.rho22}};
  j["h11"] = matrix_to_json(ch.h11);
  j["h12"] = matrix_to_json(ch.h12);
  j["h21"] = matrix_to_json(ch.h21);
  j["h22"] = matrix_to_json(ch.h22);
  return j.dump(2) + "\n";
}

void save_channel(const ChannelInstance& ch, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write channel file: " + path);
  out << channel_json(ch);
}

}  // namespace icfb
