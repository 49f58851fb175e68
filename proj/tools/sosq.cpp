#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sosq/certify.hpp"
#include "sosq/elimination.hpp"
#include "sosq/ladder.hpp"
#include "sosq/parse.hpp"
#include "sosq/zerofinder.hpp"

using namespace sosq;
using Json = nlohmann::ordered_json;

namespace {

/// Command-line problems that are neither mathematical rejections nor budget
/// exhaustion; mapped to exit code 3.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string mode = "exact";
  int max_degree = 64;
  int precision = 128;  // refinement bits for printed approximations
  std::string format = "text";
  std::string json_path;
  double timeout = 0.0;  // seconds; 0 disables
};

Rational precision_width(int bits) {
  Int den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  return Rational(1, den);
}

Json value_json(const Coefficient& c) {
  if (c.is_rational()) return to_string(c.rational_value());
  Json alg;
  const UniPoly& mp = c.defining_polynomial();
  Json coeffs = Json::array();
  for (int i = 0; i <= mp.degree(); ++i)
    coeffs.push_back(to_string(mp.coeff(i)));
  alg["minpoly"] = coeffs;
  auto [lo, hi] = c.isolating_interval();
  alg["interval"] = Json::array({to_string(lo), to_string(hi)});
  return alg;
}

std::string point_string(const std::array<Coefficient, 3>& p) {
  return "(" + p[0].to_string() + " : " + p[1].to_string() + " : " +
         p[2].to_string() + ")";
}

std::string zero_count(int n) {
  if (n == -1) return "inf";
  if (n < -1) return "unknown";
  return std::to_string(n);
}

TernaryForm parse_quartic(const std::string& text, const char* cmd) {
  TernaryForm f = parse_polynomial(text);
  if (f.degree() != 4)
    throw UsageError(std::string(cmd) + " expects a nonzero quartic form");
  return f;
}

void write_json_file(const Config& cfg, const std::string& payload) {
  if (cfg.json_path.empty()) return;
  std::ofstream out(cfg.json_path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + cfg.json_path);
  out << payload << "\n";
}

void print_certificate(const Certificate& cert) {
  std::cout << "input: " << cert.input.to_string() << "\n";
  std::cout << "certificate with " << cert.terms.size() << " term(s):\n";
  for (const auto& t : cert.terms)
    std::cout << "  " << t.weight.to_string() << " * ("
              << t.form.to_string() << ")^2\n";
  std::cout << "verified: " << (cert.verified ? "true" : "false") << "\n";
  if (cert.trace.empty()) return;
  std::cout << "trace:\n";
  for (const auto& s : cert.trace)
    std::cout << "  " << s.lemma << ": zeros " << zero_count(s.zeros_before)
              << " -> " << zero_count(s.zeros_after) << ", terms "
              << s.term_count << "\n";
}

int run_decompose(const Config& cfg, const std::string& input) {
  TernaryForm f = parse_quartic(input, "decompose");
  Certificate cert = decompose(f);
  VerifyReport rep = verify(cert);
  if (!rep.pass) {
    std::cerr << "internal verification failed: " << rep.reason << "\n";
    return 1;
  }
  std::string js = to_json(cert);
  write_json_file(cfg, js);
  if (cfg.format == "json")
    std::cout << js << "\n";
  else
    print_certificate(cert);
  return 0;
}

int run_zeros(const Config& cfg, const std::string& input) {
  TernaryForm f = parse_quartic(input, "zeros");
  ZeroSet zs = projective_real_zeros(f);
  Json out;
  switch (zs.kind) {
    case ZeroSet::Kind::Empty:
      out["kind"] = "empty";
      if (cfg.format == "text") std::cout << "Z(f) is empty\n";
      break;
    case ZeroSet::Kind::Finite: {
      out["kind"] = "finite";
      Json pts = Json::array();
      for (const auto& p : zs.points)
        pts.push_back(Json::array({value_json(p.coords[0]),
                                   value_json(p.coords[1]),
                                   value_json(p.coords[2])}));
      out["points"] = pts;
      if (cfg.format == "text") {
        std::cout << "Z(f) has " << zs.points.size() << " point(s):\n";
        for (const auto& p : zs.points)
          std::cout << "  " << point_string(p.coords) << "\n";
      }
      break;
    }
    case ZeroSet::Kind::Infinite: {
      out["kind"] = "infinite";
      Json comps = Json::array();
      for (const auto& l : zs.lines) comps.push_back(l.to_string());
      out["components"] = comps;
      if (cfg.format == "text") {
        std::cout << "Z(f) is infinite; vanishing factor(s):\n";
        for (const auto& l : zs.lines)
          std::cout << "  " << l.to_string() << " = 0\n";
      }
      break;
    }
  }
  std::string js = out.dump(2);
  write_json_file(cfg, js);
  if (cfg.format == "json") std::cout << js << "\n";
  return 0;
}

int run_min_sphere(const Config& cfg, const std::string& input) {
  TernaryForm f = parse_quartic(input, "min-sphere");
  SphereMinimum m = min_on_sphere(f);
  Json out;
  if (m.exact) {
    m.value.refine(precision_width(cfg.precision));
    auto [lo, hi] = m.value.enclosure();
    out["exact"] = true;
    out["value"] = value_json(m.value);
    out["enclosure"] = Json::array({to_string(lo), to_string(hi)});
    out["witness"] = Json::array({value_json(m.witness.coords[0]),
                                  value_json(m.witness.coords[1]),
                                  value_json(m.witness.coords[2])});
    out["eliminant"] = m.eliminant.to_string("t");
    if (cfg.format == "text") {
      std::cout << "minimum of f on the unit sphere:\n";
      std::cout << "  value = " << m.value.to_string() << "\n";
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", m.value.to_double());
      std::cout << "  ~ " << buf << "\n";
      std::cout << "  witness = " << point_string(m.witness.coords) << "\n";
      std::cout << "  eliminant: " << m.eliminant.to_string("t") << "\n";
    }
  } else {
    out["exact"] = false;
    out["enclosure"] = Json::array(
        {to_string(m.enclosure.first), to_string(m.enclosure.second)});
    if (cfg.format == "text")
      std::cout << "certified enclosure of the minimum: ["
                << to_string(m.enclosure.first) << ", "
                << to_string(m.enclosure.second) << "]\n";
  }
  std::string js = out.dump(2);
  write_json_file(cfg, js);
  if (cfg.format == "json") std::cout << js << "\n";
  return 0;
}

int run_resultant(const Config& cfg, const std::string& input,
                  const std::string& var) {
  TernaryForm f = parse_polynomial(input);
  if (f.is_zero()) throw UsageError("resultant expects a nonzero form");
  int v = var == "x" ? 0 : var == "y" ? 1 : 2;
  TernaryForm d = f.derivative(v);
  if (d.is_zero()) throw UsageError("form does not involve " + var);
  TernaryForm r = resultant_ternary(f, d, v);
  Json out;
  out["resultant"] = r.to_string();
  std::string js = out.dump(2);
  write_json_file(cfg, js);
  if (cfg.format == "json")
    std::cout << js << "\n";
  else
    std::cout << "res(f, f'_" << var << ", " << var
              << ") = " << r.to_string() << "\n";
  return 0;
}

int run_verify(const Config& cfg, const std::string& input,
               const std::string& cert_path) {
  TernaryForm f = parse_polynomial(input);
  std::ifstream in(cert_path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + cert_path);
  std::stringstream buf;
  buf << in.rdbuf();
  Certificate cert;
  try {
    cert = certificate_from_json(buf.str());
  } catch (const MathError& e) {
    throw UsageError(e.what());
  }
  cert.input = f;
  VerifyReport rep = verify(cert);
  cert.verified = rep.pass;
  write_json_file(cfg, to_json(cert));
  if (cfg.format == "json") {
    std::cout << to_json(cert) << "\n";
  } else if (rep.pass) {
    std::cout << "certificate verifies: exact identity\n";
  } else {
    std::cout << "certificate rejected: " << rep.reason << "\n";
    std::cout << "residual = " << rep.residual.to_string() << "\n";
  }
  return rep.pass ? 0 : 1;
}

int dispatch(const Config& cfg, const std::string& sub,
             const std::string& input, const std::string& cert_path,
             const std::string& var) {
  try {
    set_degree_budget(cfg.max_degree);
    if (sub == "decompose") return run_decompose(cfg, input);
    if (sub == "zeros") return run_zeros(cfg, input);
    if (sub == "min-sphere") return run_min_sphere(cfg, input);
    if (sub == "resultant") return run_resultant(cfg, input, var);
    return run_verify(cfg, input, cert_path);
  } catch (const NotPsdError& e) {
    std::cerr << "not a sum of squares: f"
              << point_string(e.witness()) << " < 0\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 2;
  } catch (const MathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact sum-of-squares certificates for ternary quartic forms"};
  app.require_subcommand(1);

  Config cfg;
  app.add_option("--mode", cfg.mode,
                 "exact | hybrid (hybrid allows numeric screening; results "
                 "are exactly verified either way)")
      ->check(CLI::IsMember({"exact", "hybrid"}));
  app.add_option("--max-degree", cfg.max_degree,
                 "algebraic degree budget (default 64)")
      ->check(CLI::Range(1, 4096));
  app.add_option("--precision", cfg.precision,
                 "refinement precision in bits for printed approximations "
                 "(default 128)")
      ->envname("SOSQ_PRECISION")
      ->check(CLI::Range(1, 8192));
  app.add_option("--format", cfg.format, "text | json output on stdout")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--json", cfg.json_path, "also write JSON output to a file");
  app.add_option("--timeout", cfg.timeout, "abort after this many seconds")
      ->check(CLI::NonNegativeNumber);

  std::string input, cert_path, var;
  struct Sub {
    const char* name;
    const char* help;
    bool needs_cert;
    bool needs_var;
  };
  const Sub subs[] = {
      {"decompose", "write a quartic as an exactly verified sum of squares",
       false, false},
      {"zeros", "real projective zero set of a quartic", false, false},
      {"verify", "re-check a certificate against a polynomial", true, false},
      {"min-sphere", "minimum of a quartic on the unit sphere", false, false},
      {"resultant", "res(f, f'_var, var) for a homogeneous form", false, true},
  };
  for (const Sub& s : subs) {
    CLI::App* c = app.add_subcommand(s.name, s.help);
    c->fallthrough();
    c->add_option("--input", input, "polynomial in x, y, z")->required();
    if (s.needs_cert)
      c->add_option("--cert", cert_path, "certificate JSON file")->required();
    if (s.needs_var)
      c->add_option("--var", var, "variable to eliminate")
          ->required()
          ->check(CLI::IsMember({"x", "y", "z"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }
  std::string sub = app.get_subcommands().front()->get_name();

  if (cfg.timeout > 0) {
    auto fut = std::async(std::launch::async, dispatch, cfg, sub, input,
                          cert_path, var);
    auto limit = std::chrono::duration<double>(cfg.timeout);
    if (fut.wait_for(limit) != std::future_status::ready) {
      std::cerr << "error: timeout after " << cfg.timeout << " s\n";
      std::_Exit(2);  // the worker cannot be cancelled; leave it behind
    }
    return fut.get();
  }
  return dispatch(cfg, sub, input, cert_path, var);
}
