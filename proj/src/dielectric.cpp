#include "casimir/dielectric.hpp"

#include "casimir/errors.hpp"
#include "casimir/real.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <string>

namespace casimir::dielectric {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view key, std::string_view text, bool allow_inf = false) {
  text = trim(text);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  const bool ok_value = std::isfinite(v) || (allow_inf && v > 0);
  if (ec != std::errc() || ptr != text.data() + text.size() || !ok_value) {
    throw DomainError("material key '" + std::string(key) + "': not a number: '" +
                      std::string(text) + "'");
  }
  return v;
}

}  // namespace

void DielectricModel::validate() const {
  if (!(eps_bar >= 1)) throw DomainError("eps_bar must be >= 1");
  if (!(omega0 > 0) || !std::isfinite(omega0)) throw DomainError("omega0 must be finite and > 0");
  if (!(four_pi_sigma >= 0) || !std::isfinite(four_pi_sigma)) {
    throw DomainError("sigma_over_eps0 must be finite and >= 0");
  }
}

DielectricModel silicon() { return DielectricModel{11.67, 8e15, 1e12, ModelKind::FullOscillator}; }

template <class Real>
Real eps_minus_one(const DielectricModel& model, const Real& zeta) {
  if (zeta < 0) throw DomainError("permittivity: zeta must be >= 0");
  if (model.mode == ModelKind::PerfectConductor) return std::numeric_limits<Real>::infinity();
  const Real sigma = model.four_pi_sigma;
  if (zeta == 0) {
    if (sigma > 0) throw PoleError("ε diverges at zero frequency");
    return Real(model.eps_bar) - 1;
  }
  const Real conduction = sigma / zeta;
  if (model.mode == ModelKind::LowFreqApprox) return (Real(model.eps_bar) - 1) + conduction;
  const Real w = zeta / Real(model.omega0);
  return (Real(model.eps_bar) - 1) / (1 + w * w) + conduction;
}

template <class Real>
Real permittivity(const DielectricModel& model, const Real& zeta) {
  return 1 + eps_minus_one<Real>(model, zeta);
}

double permittivity(const DielectricModel& model, double zeta) {
  return permittivity<double>(model, zeta);
}

ReflectionPair reflection_coeffs(double eps, double kappa, double zeta) {
  if (!(zeta >= 0) || !(kappa >= zeta)) throw DomainError("reflection_coeffs: need kappa >= zeta >= 0");
  if (!(eps >= 1)) throw DomainError("reflection_coeffs: need eps >= 1");
  if (kappa == 0) return {0.0, std::isinf(eps) ? 1.0 : (eps - 1) / (eps + 1)};
  const double q = zeta / kappa;
  if (std::isinf(eps)) return {q > 0 ? -1.0 : 0.0, 1.0};
  // sqrt(kappa^2 + zeta^2 (eps - 1)) = kappa s
  const double em1 = eps - 1;
  const double a = em1 * q * q;
  const double s = std::sqrt(1 + a);
  const double te = -a / ((1 + s) * (1 + s));
  const double tm = em1 * (eps + 1 - q * q) / ((eps + s) * (eps + s));
  return {te, tm};
}

double a_mu(double eps_bar, double mu) {
  if (!(mu >= 0)) throw DomainError("a_mu: mu must be >= 0");
  if (!(eps_bar >= 1)) throw DomainError("a_mu: eps_bar must be >= 1");
  if (std::isinf(eps_bar)) return 1.0;
  if (std::isinf(mu)) {
    const double r = (eps_bar - 1) / (eps_bar + 1);
    return r * r;
  }
  const double r = (1 + (eps_bar - 1) * mu) / (1 + (eps_bar + 1) * mu);
  return r * r;
}

double b_coefficient(double x) {
  if (!(x >= 0)) throw DomainError("b_coefficient: x must be >= 0");
  const double d = x + std::hypot(x, 1.0);
  const double d2 = d * d;
  return 1 / (d2 * d2);
}

std::string model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::FullOscillator: return "full_oscillator";
    case ModelKind::LowFreqApprox: return "low_freq";
    case ModelKind::PerfectConductor: return "perfect_conductor";
  }
  return "full_oscillator";
}

ModelKind parse_model_kind(std::string_view name) {
  name = trim(name);
  if (name == "full_oscillator" || name == "full") return ModelKind::FullOscillator;
  if (name == "low_freq" || name == "low_frequency") return ModelKind::LowFreqApprox;
  if (name == "perfect_conductor" || name == "ideal") return ModelKind::PerfectConductor;
  throw DomainError("unknown permittivity model '" + std::string(name) + "'");
}

bool set_material_key(DielectricModel& model, std::string_view key, std::string_view value) {
  key = trim(key);
  if (key == "eps_bar") {
    model.eps_bar = parse_number(key, value, true);
  } else if (key == "omega0") {
    model.omega0 = parse_number(key, value);
  } else if (key == "sigma_over_eps0") {
    model.four_pi_sigma = parse_number(key, value);
  } else if (key == "model") {
    model.mode = parse_model_kind(value);
  } else {
    return false;
  }
  return true;
}

DielectricModel parse_material(std::string_view text) {
  DielectricModel model = silicon();
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto c = line.find_first_of("#;"); c != std::string_view::npos) line = line.substr(0, c);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw DomainError("material line " + std::to_string(line_no) + ": expected key = value");
    }
    if (!set_material_key(model, line.substr(0, eq), line.substr(eq + 1))) {
      throw DomainError("material line " + std::to_string(line_no) + ": unknown key '" +
                        std::string(trim(line.substr(0, eq))) + "'");
    }
  }
  model.validate();
  return model;
}

template double eps_minus_one<double>(const DielectricModel&, const double&);
template quad eps_minus_one<quad>(const DielectricModel&, const quad&);
template double permittivity<double>(const DielectricModel&, const double&);
template quad permittivity<quad>(const DielectricModel&, const quad&);

}  // namespace casimir::dielectric
