#include "sosq/certify.hpp"

#include <cctype>
#include <map>

#include <json.hpp>

namespace sosq {

namespace {

using Json = nlohmann::ordered_json;

std::string mono_key(const std::array<int, 3>& e) {
  static const char* names[3] = {"x", "y", "z"};
  std::string s;
  for (int v = 0; v < 3; ++v) {
    if (e[v] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[v];
    if (e[v] > 1) s += "^" + std::to_string(e[v]);
  }
  return s.empty() ? "1" : s;
}

Json coeff_json(const Coefficient& c) {
  if (c.is_rational()) return to_string(c.rational_value());
  Json alg;
  const UniPoly& mp = c.defining_polynomial();
  Json coeffs = Json::array();
  for (int i = 0; i <= mp.degree(); ++i)
    coeffs.push_back(to_string(mp.coeff(i)));
  alg["minpoly"] = coeffs;  // constant term first
  auto [lo, hi] = c.isolating_interval();
  alg["interval"] = Json::array({to_string(lo), to_string(hi)});
  return alg;
}

Json form_json(const TernaryForm& f) {
  Json obj = Json::object();
  for (const auto& [e, c] : f.terms()) obj[mono_key(e)] = coeff_json(c);
  return obj;
}

void collect_field(const Coefficient& c, FieldPtr& best) {
  if (c.is_rational()) return;
  FieldPtr fld = c.field();
  if (!best || fld->degree() > best->degree()) best = fld;
}

std::array<int, 3> parse_mono_key(const std::string& key) {
  std::array<int, 3> e = {0, 0, 0};
  if (key == "1") return e;
  size_t pos = 0;
  while (pos < key.size()) {
    char v = key[pos];
    if (v != 'x' && v != 'y' && v != 'z')
      throw MathError("bad monomial key: " + key);
    ++pos;
    int exp = 1;
    if (pos < key.size() && key[pos] == '^') {
      ++pos;
      size_t start = pos;
      while (pos < key.size() && std::isdigit(static_cast<unsigned char>(key[pos])))
        ++pos;
      if (pos == start) throw MathError("bad monomial key: " + key);
      exp = std::stoi(key.substr(start, pos - start));
    }
    e[v == 'x' ? 0 : v == 'y' ? 1 : 2] += exp;
    if (pos < key.size()) {
      if (key[pos] != '*') throw MathError("bad monomial key: " + key);
      ++pos;
    }
  }
  return e;
}

/// Rebuilds coefficients; identical algebraic descriptors share one field so
/// the reconstructed certificate stays single-extension.
struct JsonReader {
  std::map<std::string, FieldPtr> fields;

  Coefficient coeff(const Json& j) {
    if (j.is_string()) {
      return Coefficient(rational_from_string(j.get<std::string>()));
    }
    if (!j.is_object() || !j.contains("minpoly") || !j.contains("interval"))
      throw MathError("bad coefficient in certificate JSON");
    std::string key = j.dump();
    auto it = fields.find(key);
    if (it == fields.end()) {
      std::vector<Rational> c;
      for (const auto& s : j["minpoly"])
        c.push_back(rational_from_string(s.get<std::string>()));
      Rational lo = rational_from_string(j["interval"][0].get<std::string>());
      Rational hi = rational_from_string(j["interval"][1].get<std::string>());
      it = fields.emplace(key, NumberField::make(UniPoly(c), lo, hi)).first;
    }
    return RealAlgebraic::generator(it->second);
  }

  TernaryForm form(const Json& j) {
    if (!j.is_object()) throw MathError("bad form in certificate JSON");
    TernaryForm f;
    for (const auto& [key, val] : j.items()) {
      auto e = parse_mono_key(key);
      f.set_coeff(e[0], e[1], e[2], coeff(val));
    }
    return f;
  }
};

int zeros_from_json(const Json& j) {
  if (j.is_string()) return j.get<std::string>() == "inf" ? -1 : -2;
  return j.get<int>();
}

}  // namespace

TernaryForm expand(const Certificate& cert) {
  TernaryForm acc;
  for (const auto& t : cert.terms) acc = acc + t.weight * t.form * t.form;
  return acc;
}

VerifyReport verify(const Certificate& cert) {
  VerifyReport rep;
  for (const auto& t : cert.terms) {
    if (t.weight.sign() < 0) {
      rep.reason = "negative weight";
      rep.residual = cert.input - expand(cert);
      return rep;
    }
    if (!t.form.is_zero() && t.form.degree() != 2) {
      rep.reason = "non-quadratic form";
      rep.residual = cert.input - expand(cert);
      return rep;
    }
  }
  rep.residual = cert.input - expand(cert);
  if (!rep.residual.is_zero()) {
    rep.reason = "nonzero residual";
    return rep;
  }
  rep.pass = true;
  return rep;
}

std::string to_json(const Certificate& cert) {
  Json root;
  root["input"] = form_json(cert.input);

  FieldPtr best;
  for (const auto& t : cert.terms) {
    collect_field(t.weight, best);
    for (const auto& [e, c] : t.form.terms()) collect_field(c, best);
  }
  if (!best) {
    root["field"] = "rational";
  } else {
    Json fld;
    Json coeffs = Json::array();
    const UniPoly& d = best->defining();
    for (int i = 0; i <= d.degree(); ++i)
      coeffs.push_back(to_string(d.coeff(i)));
    fld["minpoly"] = coeffs;
    auto [lo, hi] = best->interval();
    fld["interval"] = Json::array({to_string(lo), to_string(hi)});
    root["field"] = fld;
  }

  Json terms = Json::array();
  for (const auto& t : cert.terms) {
    Json jt;
    jt["weight"] = coeff_json(t.weight);
    jt["form"] = form_json(t.form);
    terms.push_back(jt);
  }
  root["terms"] = terms;
  root["verified"] = cert.verified;

  Json trace = Json::array();
  for (const auto& s : cert.trace) {
    Json js;
    js["lemma"] = s.lemma;
    // -1 encodes an infinite zero set, anything below it an unknown count
    auto zjson = [](int n) {
      if (n == -1) return Json("inf");
      return n < -1 ? Json("unknown") : Json(n);
    };
    js["zeros_before"] = zjson(s.zeros_before);
    js["zeros_after"] = zjson(s.zeros_after);
    js["terms"] = s.term_count;
    trace.push_back(js);
  }
  root["trace"] = trace;
  return root.dump(2);
}

Certificate certificate_from_json(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const std::exception& e) {
    throw MathError(std::string("invalid certificate JSON: ") + e.what());
  }
  if (!root.is_object() || !root.contains("input") || !root.contains("terms"))
    throw MathError("certificate JSON lacks input/terms");
  JsonReader rd;
  Certificate cert;
  cert.input = rd.form(root["input"]);
  for (const auto& jt : root["terms"]) {
    if (!jt.contains("weight") || !jt.contains("form"))
      throw MathError("certificate term lacks weight/form");
    cert.terms.push_back({rd.coeff(jt["weight"]), rd.form(jt["form"])});
  }
  if (root.contains("verified")) cert.verified = root["verified"].get<bool>();
  if (root.contains("trace"))
    for (const auto& js : root["trace"])
      cert.trace.push_back({js.at("lemma").get<std::string>(),
                            zeros_from_json(js.at("zeros_before")),
                            zeros_from_json(js.at("zeros_after")),
                            js.at("terms").get<int>()});
  return cert;
}

}  // namespace sosq
