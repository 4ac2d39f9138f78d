#include "cli_app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <ostream>

#include "smallnum/bound_suite.hpp"
#include "smallnum/campaign.hpp"
#include "smallnum/info_metrics.hpp"
#include "smallnum/quadrature.hpp"
#include "smallnum/scaled_fisher.hpp"
#include "smallnum/sum_engines.hpp"

namespace smallnum::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;

std::string cell_text(const Cell& c, bool full_precision) {
  struct Visitor {
    bool full;
    std::string operator()(double d) const {
      if (!std::isfinite(d)) return fmt::format("{}", d);
      return full ? fmt::format("{:.17g}", d) : fmt::format("{:.10g}", d);
    }
    std::string operator()(std::int64_t i) const { return fmt::format("{}", i); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{full_precision}, c);
}

std::string cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* s = std::get_if<std::string>(&c)) return json_quote(*s);
  return cell_text(c, true);
}

Pmf binomial(std::size_t n, double p) {
  const std::vector<Pmf> parts(n, pmf_bernoulli(p));
  return sum_independent(parts);
}

}  // namespace

double Table::number(std::size_t row, std::string_view column) const {
  const auto it = std::find(columns.begin(), columns.end(), column);
  if (it == columns.end()) {
    throw std::out_of_range(fmt::format("Table: no column '{}'", column));
  }
  const Cell& c = rows.at(row).at(static_cast<std::size_t>(it - columns.begin()));
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  throw std::invalid_argument(fmt::format("Table: column '{}' is not numeric", column));
}

std::string render(const Table& t, Format f) {
  std::string out;
  switch (f) {
    case Format::Json: {
      out = "[";
      for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out += r ? ",\n {" : "\n {";
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
          if (c) out += ", ";
          out += json_quote(t.columns[c]) + ": " + cell_json(t.rows[r][c]);
        }
        out += "}";
      }
      out += t.rows.empty() ? "]\n" : "\n]\n";
      return out;
    }
    case Format::Csv: {
      for (std::size_t c = 0; c < t.columns.size(); ++c) {
        out += (c ? "," : "") + t.columns[c];
      }
      out += "\n";
      for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
          out += (c ? "," : "") + cell_text(row[c], true);
        }
        out += "\n";
      }
      return out;
    }
    case Format::Table: {
      std::vector<std::size_t> width(t.columns.size());
      std::vector<std::vector<std::string>> text;
      for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
      for (const auto& row : t.rows) {
        auto& line = text.emplace_back();
        for (std::size_t c = 0; c < row.size(); ++c) {
          line.push_back(cell_text(row[c], false));
          width[c] = std::max(width[c], line.back().size());
        }
      }
      for (std::size_t c = 0; c < t.columns.size(); ++c) {
        out += fmt::format("{:>{}}  ", t.columns[c], width[c]);
      }
      out += "\n";
      for (const auto& line : text) {
        for (std::size_t c = 0; c < line.size(); ++c) {
          out += fmt::format("{:>{}}  ", line[c], width[c]);
        }
        out += "\n";
      }
      return out;
    }
  }
  return out;
}

std::string render(const std::vector<BoundReport>& reports, Format f) {
  switch (f) {
    case Format::Json:
      return to_json(reports) + "\n";
    case Format::Csv: {
      std::string out = csv_header() + "\n";
      for (const auto& r : reports) out += to_csv_row(r) + "\n";
      return out;
    }
    case Format::Table: {
      Table t;
      t.columns = {"name", "lhs", "rhs", "slack", "holds"};
      for (const auto& r : reports) {
        t.rows.push_back({r.name, r.lhs, r.rhs, r.slack, r.holds});
      }
      return render(t, Format::Table);
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Worked examples

Table example1_table(double lambda, std::span<const std::size_t> ns) {
  if (!(lambda > 0.0)) throw ConfigError("example1: lambda must be positive");
  Table t;
  t.columns = {"n", "p", "exact_tv", "theorem1_pinsker", "two_plus_eps_bound",
               "two_lambda_over_sqrt_n", "sqrt_two_sum_p2", "ordered"};
  for (std::size_t n : ns) {
    const double nd = static_cast<double>(n);
    if (nd < 10.0 * lambda) throw ConfigError("example1: need n >= 10 lambda");
    const double p = lambda / nd;
    const double exact = total_variation(binomial(n, p), PoissonLaw(lambda));
    const BoundReport rate = example1_rate_report(lambda, n);
    const double rough = 2.0 * lambda / std::sqrt(nd);
    const double eq4 = std::sqrt(2.0 * nd * p * p);
    const bool ordered = exact <= rate.lhs && rate.holds && rate.rhs <= rough;
    t.all_hold = t.all_hold && ordered;
    t.rows.push_back({static_cast<std::int64_t>(n), p, exact, rate.lhs, rate.rhs,
                      rough, eq4, ordered});
  }
  return t;
}

Table example2_table(double mu, std::span<const std::size_t> ns) {
  if (!(mu > 0.0)) throw ConfigError("example2: mu must be positive");
  Table t;
  t.columns = {"n",        "p",          "lambda",         "exact_tv",
               "bound",    "asymptote",  "reference_rate", "bound_over_asymptote",
               "holds"};
  const double ref_coeff = std::sqrt(1.0 / (2.0 * std::numbers::pi * std::numbers::e));
  for (std::size_t n : ns) {
    const double root = std::sqrt(static_cast<double>(n));
    const double p = mu / root;
    if (!(p < 1.0)) throw ConfigError("example2: need mu / sqrt(n) < 1");
    const double lambda = mu * root;
    const double exact = total_variation(binomial(n, p), PoissonLaw(lambda));
    const double bound = p * std::sqrt(2.0 / (1.0 - p));
    const double asymptote = p * std::sqrt(2.0);
    const bool holds = exact <= bound + kInequalityTol;
    t.all_hold = t.all_hold && holds;
    t.rows.push_back({static_cast<std::int64_t>(n), p, lambda, exact, bound,
                      asymptote, p * ref_coeff, bound / asymptote, holds});
  }
  return t;
}

namespace {

const std::vector<std::string> kExample3Columns = {
    "n",       "lambda",      "q",          "exact_tv",    "bound",
    "elegant", "sqrt2_lambda_over_n", "fisher_of_sum", "combination",
    "equality", "holds"};

std::vector<Cell> example3_row(std::span<const double> qs, bool& all_hold) {
  const std::size_t n = qs.size();
  std::vector<Pmf> parts;
  std::vector<MeanAndFisher> mf;
  CompensatedSum lambda_sum;
  CompensatedSum cubes;
  for (double q : qs) {
    parts.push_back(pmf_geometric(q));
    mf.push_back({parts.back().mean(), scaled_fisher_info(parts.back())});
    lambda_sum += (1.0 - q) / q;
    cubes += std::pow(1.0 - q, 3.0) / (q * q);
  }
  const double lambda = lambda_sum.value();
  const Pmf sum = sum_independent(parts);
  const double exact = total_variation(sum, PoissonLaw(sum.mean()));
  const double bound = std::sqrt(2.0 / lambda * cubes.value());
  const double fisher = scaled_fisher_info(sum);
  const double combination = subadditive_combination(mf);
  const bool equality = std::fabs(fisher - combination) <= kIdentityTol;

  const bool all_equal =
      std::all_of(qs.begin(), qs.end(), [&](double q) { return q == qs.front(); });
  const double nd = static_cast<double>(n);
  Cell elegant = std::string();
  Cell over_n = std::string();
  bool holds = exact <= bound + kInequalityTol;
  if (all_equal) {
    const double e = std::sqrt(2.0) * lambda / std::sqrt(nd * (nd + lambda));
    elegant = e;
    over_n = std::sqrt(2.0) * lambda / nd;
    holds = holds && std::fabs(bound - e) <= 1e-12 && e <= std::sqrt(2.0) * lambda / nd;
  }
  all_hold = all_hold && holds;
  Cell q_cell = all_equal ? Cell{qs.front()} : Cell{std::string("mixed")};
  return {static_cast<std::int64_t>(n), lambda, q_cell, exact, bound, elegant,
          over_n, fisher, combination, equality, holds};
}

}  // namespace

Table example3_table(double lambda, std::span<const std::size_t> ns) {
  if (!(lambda > 0.0)) throw ConfigError("example3: lambda must be positive");
  Table t;
  t.columns = kExample3Columns;
  for (std::size_t n : ns) {
    if (n == 0) throw ConfigError("example3: n must be >= 1");
    const double nd = static_cast<double>(n);
    const std::vector<double> qs(n, nd / (nd + lambda));
    t.rows.push_back(example3_row(qs, t.all_hold));
  }
  return t;
}

Table example3_table(std::span<const double> qs) {
  for (double q : qs) {
    if (!(q > 0.0 && q <= 1.0)) throw ConfigError("example3: q must lie in (0, 1]");
  }
  Table t;
  t.columns = kExample3Columns;
  // Every q_i = 1 is the point mass at zero; there is no Poisson target.
  const bool degenerate =
      std::all_of(qs.begin(), qs.end(), [](double q) { return q == 1.0; });
  if (!qs.empty() && !degenerate) t.rows.push_back(example3_row(qs, t.all_hold));
  return t;
}

Table markov_table(std::span<const std::size_t> ns) {
  Table t;
  t.columns = {"n", "exact_divergence", "intermediate", "bound",
               "closed_form_mi_term", "holds"};
  for (std::size_t n : ns) {
    if (n < 3) throw ConfigError("markov: n must be >= 3");
    const BoundReport r = markov_example_report(n);
    t.all_hold = t.all_hold && r.holds;
    t.rows.push_back({static_cast<std::int64_t>(n), r.lhs, *r.intermediate, r.rhs,
                      r.param_number("closed_form_mi_term"), r.holds});
  }
  return t;
}

// ---------------------------------------------------------------------------
// Argument handling

namespace {

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  return Format::Table;
}

void add_format(CLI::App* sub, std::string& target) {
  sub->add_option("--format", target, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
}

Pmf parse_distribution(const std::vector<std::string>& spec, double tail_eps) {
  auto number = [&](std::size_t i) {
    if (i >= spec.size()) throw ConfigError("distribution: missing parameter");
    try {
      return std::stod(spec[i]);
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("distribution: bad number '{}'", spec[i]));
    }
  };
  if (spec.empty()) throw ConfigError("distribution: expected a family name");
  const std::string& kind = spec.front();
  if ((kind == "bern" || kind == "bernoulli") && spec.size() == 2) {
    return pmf_bernoulli(number(1));
  }
  if (kind == "binomial" && spec.size() == 3) {
    const double n = number(1);
    if (!(n >= 1.0) || n != std::floor(n)) throw ConfigError("binomial: n must be a positive integer");
    return binomial(static_cast<std::size_t>(n), number(2));
  }
  if (kind == "poisson" && spec.size() == 2) {
    return pmf_poisson_truncated(number(1), tail_eps);
  }
  if ((kind == "geom" || kind == "geometric") && spec.size() == 2) {
    return pmf_geometric(number(1), tail_eps);
  }
  throw ConfigError(
      "distribution: expected 'bern P', 'binomial N P', 'poisson L' or 'geom Q'");
}

std::string campaign_table(const CampaignSummary& s) {
  std::string out;
  out += fmt::format("family   {}\n", family_name(s.config.family));
  out += fmt::format("seed     {}\n", s.config.seed);
  out += fmt::format("trials   {}\n", s.config.trials);
  out += fmt::format("max_n    {}\n", s.config.effective_max_n());
  out += fmt::format("reports  {}\n", s.reports);
  out += fmt::format("failures {}\n", s.failures.size());
  for (const auto& [name, count] : s.reports_by_name) {
    out += fmt::format("  {:<32} {}\n", name, count);
  }
  for (const auto& f : s.failures) {
    out += fmt::format("FAIL trial {} seed {}: {}\n", f.trial, f.trial_seed,
                       to_json(f.report));
  }
  return out;
}

std::string campaign_csv(const CampaignSummary& s) {
  std::string out = "trial,trial_seed," + csv_header() + "\n";
  for (const auto& f : s.failures) {
    out += fmt::format("{},{},{}\n", f.trial, f.trial_seed, to_csv_row(f.report));
  }
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Poisson-approximation bounds for sums of integer random variables",
               "smallnum"};
  app.require_subcommand(1);

  double tail_eps = kDefaultTailEps;
  auto add_tail = [&](CLI::App* sub) {
    sub->add_option("--tail-eps", tail_eps, "Truncation mass for materialized laws")
        ->capture_default_str();
  };

  // example1
  std::string fmt1 = "table";
  double lambda1 = 1.0;
  std::vector<std::size_t> ns1{100, 1000, 10000};
  auto* ex1 = app.add_subcommand("example1", "i.i.d. Bernoulli(lambda/n) rate table");
  ex1->add_option("--lambda", lambda1)->capture_default_str();
  ex1->add_option("--n", ns1, "Row values of n")->capture_default_str();
  add_format(ex1, fmt1);

  // example2
  std::string fmt2 = "table";
  double mu = 1.0;
  std::vector<std::size_t> ns2{100, 1000, 10000};
  auto* ex2 = app.add_subcommand("example2", "i.i.d. Bernoulli(mu/sqrt n) rate table");
  ex2->add_option("--mu", mu)->capture_default_str();
  ex2->add_option("--n", ns2, "Row values of n")->capture_default_str();
  add_format(ex2, fmt2);

  // example3
  std::string fmt3 = "table";
  double lambda3 = 1.0;
  std::vector<std::size_t> ns3{10, 100, 1000};
  std::vector<double> qs3;
  auto* ex3 = app.add_subcommand("example3", "Sums of geometric variables");
  ex3->add_option("--lambda", lambda3, "Target mean when q_i = n/(n+lambda)")
      ->capture_default_str();
  ex3->add_option("--n", ns3, "Row values of n")->capture_default_str();
  ex3->add_option("--q", qs3, "Explicit list of q_i (one row)");
  add_format(ex3, fmt3);
  add_tail(ex3);

  // markov
  std::string fmtm = "table";
  std::vector<std::size_t> nsm{3, 10, 100, 1000};
  auto* mk = app.add_subcommand("markov", "Stationary two-state chain example");
  mk->add_option("--n", nsm, "Chain lengths (>= 3)")->capture_default_str();
  add_format(mk, fmtm);

  // compound
  std::string fmtc = "table";
  std::vector<double> psc;
  std::size_t repeat = 1;
  auto* cp = app.add_subcommand("compound", "Compound Poisson Po(lambda/2, lambda/2) example");
  cp->add_option("ps", psc, "Bernoulli parameters p_i")->required();
  cp->add_option("--repeat", repeat, "Repeat the list this many times")
      ->capture_default_str();
  add_format(cp, fmtc);

  // verify
  std::string fmtv = "json";
  CampaignConfig config;
  std::string family = "bernoulli-lists";
  std::optional<double> tol_override;
  bool unsafe = false;
  auto* vf = app.add_subcommand("verify", "Seeded randomized verification campaign");
  vf->add_option("--seed", config.seed)->capture_default_str();
  vf->add_option("--trials", config.trials)->capture_default_str();
  vf->add_option("--family", family)
      ->check(CLI::IsMember({"bernoulli-lists", "random-pmf", "joint-binary",
                             "geometric-lists"}))
      ->capture_default_str();
  vf->add_option("--max-n", config.max_n, "0 selects the family default")
      ->capture_default_str();
  vf->add_option("--tol-override", tol_override,
                 "Replace every report tolerance (testing only)");
  vf->add_flag("--unsafe", unsafe, "Allow --tol-override to loosen defaults");
  add_format(vf, fmtv);
  add_tail(vf);

  // debruijn
  std::string fmtd = "table";
  std::vector<std::string> dist;
  double t_max = 0.0;
  double abs_tol = 1e-6;
  int max_depth = 50;
  auto* db = app.add_subcommand("debruijn", "Smoothing-integral identity for one law");
  db->add_option("dist", dist, "bern P | binomial N P | poisson L | geom Q")->required();
  db->add_option("--t-max", t_max, "Upper integration limit (0: 50(1+lambda))")
      ->capture_default_str();
  db->add_option("--abs-tol", abs_tol)->capture_default_str();
  db->add_option("--max-depth", max_depth)->capture_default_str();
  add_format(db, fmtd);
  add_tail(db);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (!(tail_eps > 0.0 && tail_eps <= 1e-6)) {
      throw ConfigError("--tail-eps must lie in (0, 1e-6]");
    }
    if (*ex1) {
      const Table t = example1_table(lambda1, ns1);
      out << render(t, parse_format(fmt1));
      return t.all_hold ? kExitOk : kExitFailed;
    }
    if (*ex2) {
      const Table t = example2_table(mu, ns2);
      out << render(t, parse_format(fmt2));
      return t.all_hold ? kExitOk : kExitFailed;
    }
    if (*ex3) {
      const Table t = qs3.empty() ? example3_table(lambda3, ns3) : example3_table(qs3);
      out << render(t, parse_format(fmt3));
      return t.all_hold ? kExitOk : kExitFailed;
    }
    if (*mk) {
      const Table t = markov_table(nsm);
      out << render(t, parse_format(fmtm));
      return t.all_hold ? kExitOk : kExitFailed;
    }
    if (*cp) {
      if (repeat == 0) throw ConfigError("--repeat must be >= 1");
      std::vector<double> ps;
      for (std::size_t i = 0; i < repeat; ++i) ps.insert(ps.end(), psc.begin(), psc.end());
      for (double p : ps) {
        if (!(p >= 0.0 && p < 1.0)) throw ConfigError("compound: p_i must lie in [0, 1)");
      }
      const auto reports = compound_example_report(ps);
      out << render(reports, parse_format(fmtc));
      const bool ok = std::all_of(reports.begin(), reports.end(),
                                  [](const BoundReport& r) { return r.holds; });
      return ok ? kExitOk : kExitFailed;
    }
    if (*vf) {
      config.family = *parse_family(family);
      config.tail_eps = tail_eps;
      config.tol_override = tol_override;
      config.unsafe = unsafe;
      config.validate();
      const CampaignSummary summary = run_campaign(config);
      switch (parse_format(fmtv)) {
        case Format::Json: out << summary_to_json(summary) << "\n"; break;
        case Format::Csv: out << campaign_csv(summary); break;
        case Format::Table: out << campaign_table(summary); break;
      }
      return summary.passed() ? kExitOk : kExitFailed;
    }
    if (*db) {
      const Pmf p = parse_distribution(dist, tail_eps);
      QuadratureSpec quad = default_quadrature(p.mean());
      if (t_max > 0.0) quad.t_max = t_max;
      quad.abs_tol = abs_tol;
      quad.max_depth = max_depth;
      quad.validate();
      DeBruijnOutcome outcome = debruijn_identity_report(p, quad);
      const DeBruijnDiagnostic diag = debruijn_diagnostic(p, quad);
      outcome.report.with("diagnostic_approximation", diag.approximation)
          .with("diagnostic_tail_estimate", diag.tail_estimate)
          .with("diagnostic_ratio",
                diag.divergence > 0.0 ? diag.approximation / diag.divergence : 0.0);
      if (parse_format(fmtd) == Format::Table) {
        out << fmt::format("divergence     {:.12g}\n", outcome.divergence);
        out << fmt::format("integral       {:.12g}\n", outcome.integral);
        out << fmt::format("tail_estimate  {:.12g}\n", outcome.tail_estimate);
        out << fmt::format("difference     {:.3e} (tolerance {:.1e})\n",
                           outcome.report.lhs, outcome.report.tolerance);
        out << fmt::format("diagnostic     {:.12g}\n", diag.approximation);
        out << fmt::format("holds          {}\n", outcome.report.holds);
      } else {
        out << render(std::vector<BoundReport>{outcome.report}, parse_format(fmtd));
      }
      return outcome.report.holds ? kExitOk : kExitFailed;
    }
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const QuadratureError& e) {
    err << "quadrature error: " << e.what() << "\n";
    return kExitFailed;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace smallnum::cli
