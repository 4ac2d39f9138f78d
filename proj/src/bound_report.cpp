#include "smallnum/bound_report.hpp"

#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

namespace smallnum {

BoundReport BoundReport::make(std::string name, double lhs, double rhs,
                              double tolerance) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.retolerate(tolerance);
  return r;
}

BoundReport BoundReport::make_chain(std::string name, double lhs,
                                    double intermediate, double rhs,
                                    double tolerance) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.intermediate = intermediate;
  r.retolerate(tolerance);
  return r;
}

BoundReport& BoundReport::with(std::string key, ParamValue value) {
  params.emplace_back(std::move(key), std::move(value));
  return *this;
}

const ParamValue* BoundReport::param(std::string_view key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return &v;
  }
  return nullptr;
}

double BoundReport::param_number(std::string_view key) const {
  const ParamValue* v = param(key);
  if (v == nullptr) {
    throw std::out_of_range(fmt::format("BoundReport: no param '{}'", key));
  }
  if (const auto* d = std::get_if<double>(v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(v)) return static_cast<double>(*i);
  throw std::invalid_argument(fmt::format("BoundReport: param '{}' is not numeric", key));
}

void BoundReport::retolerate(double tol) {
  tolerance = tol;
  slack = rhs - lhs;
  // NaN on either side never holds.
  holds = lhs <= rhs + tol;
  if (intermediate) {
    holds = lhs <= *intermediate + tol && *intermediate <= rhs + tol;
  }
}

std::string format_number(double x) {
  if (std::isnan(x)) return "\"nan\"";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  return fmt::format("{:.17g}", x);
}

std::string json_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          out += fmt::format("\\u{:04x}", static_cast<int>(c));
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

std::string param_to_json(const ParamValue& v) {
  struct Visitor {
    std::string operator()(double d) const { return format_number(d); }
    std::string operator()(std::int64_t i) const { return fmt::format("{}", i); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::string& s) const { return json_quote(s); }
    std::string operator()(const std::vector<double>& xs) const {
      std::string out = "[";
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += format_number(xs[i]);
      }
      return out + "]";
    }
  };
  return std::visit(Visitor{}, v);
}

namespace {

std::string params_json(const BoundReport& r) {
  std::string out = "{";
  if (r.intermediate) {
    out += "\"intermediate\": " + format_number(*r.intermediate);
    if (!r.params.empty()) out += ", ";
  }
  for (std::size_t i = 0; i < r.params.size(); ++i) {
    if (i) out += ", ";
    out += json_quote(r.params[i].first) + ": " + param_to_json(r.params[i].second);
  }
  return out + "}";
}

std::string csv_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_json(const BoundReport& r) {
  return fmt::format(
      "{{\"name\": {}, \"lhs\": {}, \"rhs\": {}, \"slack\": {}, \"holds\": {}, "
      "\"tolerance\": {}, \"params\": {}}}",
      json_quote(r.name), format_number(r.lhs), format_number(r.rhs),
      format_number(r.slack), r.holds ? "true" : "false",
      format_number(r.tolerance), params_json(r));
}

std::string to_json(const std::vector<BoundReport>& reports) {
  std::string out = "[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out += i ? ",\n " : "\n ";
    out += to_json(reports[i]);
  }
  return out + (reports.empty() ? "]" : "\n]");
}

std::string csv_header() { return "name,lhs,rhs,slack,holds,tolerance,params"; }

std::string to_csv_row(const BoundReport& r) {
  auto bare = [](double x) {
    std::string s = format_number(x);
    if (!s.empty() && s.front() == '"') s = s.substr(1, s.size() - 2);
    return s;
  };
  return fmt::format("{},{},{},{},{},{},{}", csv_escape(r.name), bare(r.lhs),
                     bare(r.rhs), bare(r.slack), r.holds ? "true" : "false",
                     bare(r.tolerance), csv_escape(params_json(r)));
}

}  // namespace smallnum
