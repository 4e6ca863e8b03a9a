#pragma once

// Command-line front end. Kept in a header so tests can drive run() with
// captured streams; tools/main.cpp is the only translation unit that
// defines main().

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sunits/sunits.hpp"

namespace sunits::cli {

enum ExitCode : int { ok = 0, failure = 1, usage = 2, budget = 3 };

enum class Format { plain, json_lines };

struct RunConfig {
  Format format = Format::plain;
  std::uint64_t budget_nodes = SearchBudget{}.nodes;
  std::uint64_t ceiling = SolveOptions{}.ceiling;
  unsigned threads = 1;
  std::uint64_t seed = 0;  // reserved for sampling harnesses; no command samples today
};

using nlohmann::json;

inline std::vector<std::string> unit_strings(const Solution& sol) {
  std::vector<std::string> out;
  for (const auto& x : sol) out.push_back(to_string(x));
  return out;
}

inline std::vector<std::string> value_strings(const Solution& sol) {
  std::vector<std::string> out;
  for (const auto& x : sol) out.push_back(text::to_string(value_of(x)));
  return out;
}

inline std::vector<std::size_t> one_based(const std::vector<std::size_t>& idx) {
  std::vector<std::size_t> out;
  for (auto i : idx) out.push_back(i + 1);
  return out;
}

inline std::string brace_list(const std::vector<std::size_t>& idx) {
  std::string out = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) out += (i ? "," : "") + std::to_string(idx[i]);
  return out + "}";
}

template <class T>
std::vector<T> parse_list(const std::string& s) {
  std::vector<T> out;
  for (auto item : text::split(s, ',')) out.push_back(text::parse_int<T>(item));
  return out;
}

inline std::vector<mpz_class> parse_bigint_list(const std::string& s) {
  std::vector<mpz_class> out;
  for (auto item : text::split(s, ',')) out.push_back(text::parse_bigint(item));
  return out;
}

inline void emit(std::ostream& out, const json& record) { out << record.dump() << '\n'; }

// ---- commands ---------------------------------------------------------------

inline int cmd_enumerate(const RunConfig& cfg, const std::string& primes, std::optional<std::size_t> count,
                         std::optional<std::string> bound, std::ostream& out) {
  auto s = PrimeSet::parse(primes);
  EnumerationStop stop;
  stop.count = count;
  if (bound) stop.bound = text::parse_bigint(*bound);
  auto values = enumerate_s_integers(s, stop);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (cfg.format == Format::plain)
      out << values[i].value().get_str() << '\n';
    else
      emit(out, {{"index", i + 1}, {"value", values[i].value().get_str()}, {"unit", to_string(values[i].unit())}});
  }
  return ok;
}

inline int cmd_solve(const RunConfig& cfg, const std::string& eq_text, exponent_t bound, const std::string& domain,
                     bool nondegenerate_only, std::ostream& out) {
  auto eq = UnitEquation::parse(eq_text);
  SolveOptions opt{cfg.ceiling, cfg.threads};
  for (const auto& s : solve_bounded(eq, bound, parse_domain(domain), opt)) {
    if (nondegenerate_only && s.degenerate) continue;
    if (cfg.format == Format::plain)
      out << format_values(s.coords) << (s.degenerate ? " degenerate" : "") << '\n';
    else
      emit(out, {{"solution", unit_strings(s.coords)}, {"values", value_strings(s.coords)}, {"degenerate", s.degenerate}});
  }
  return ok;
}

inline int cmd_witness(const RunConfig& cfg, const std::string& eq_text, exponent_t bound, const std::string& domain,
                       std::ostream& out) {
  auto eq = UnitEquation::parse(eq_text);
  auto w = witness_sets(eq, bound, parse_domain(domain), SolveOptions{cfg.ceiling, cfg.threads});
  for (std::size_t i = 0; i < w.sets.size(); ++i) {
    if (cfg.format == Format::plain) {
      std::vector<mpq_class> vals;
      for (const auto& x : w.sets[i]) vals.push_back(value_of(x));
      std::sort(vals.begin(), vals.end());
      out << 'V' << i + 1 << " = {";
      for (std::size_t j = 0; j < vals.size(); ++j) out << (j ? ", " : "") << vals[j].get_str();
      out << "}\n";
    } else {
      emit(out, {{"index", i + 1},
                 {"exp_bound", w.height_bound},
                 {"domain", to_string(w.domain)},
                 {"members", unit_strings(w.sets[i])},
                 {"values", value_strings(w.sets[i])}});
    }
  }
  return ok;
}

inline int cmd_decompose(const RunConfig& cfg, const std::string& eq_text, const std::string& sol_text,
                         std::ostream& out) {
  auto eq = UnitEquation::parse(eq_text);
  auto sol = parse_solution(sol_text, eq.primes());
  auto d = decompose(eq, sol);
  if (cfg.format == Format::plain) {
    out << "J = " << brace_list(one_based(d.zero_set)) << '\n'
        << "I = " << brace_list(one_based(d.active_set)) << '\n'
        << "residual = " << format_values(d.residual) << '\n';
  } else {
    emit(out, {{"zero_set", one_based(d.zero_set)},
               {"active_set", one_based(d.active_set)},
               {"residual", unit_strings(d.residual)},
               {"residual_values", value_strings(d.residual)}});
  }
  return ok;
}

inline std::string coeff_text(const std::vector<coeff_t>& c) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + std::to_string(c[i]);
  return out + ")";
}

struct CheckArgs {
  std::string seq;
  std::size_t k_max = 2;
  coeff_t c_bound = 2;
  coeff_t m_bound = 20;
  index_t horizon = 60;
  double late_fraction = TailOptions{}.late_fraction;
  bool ordered = false;
};

inline int cmd_check(const RunConfig& cfg, const CheckArgs& a, std::ostream& out) {
  auto spec = parse_sequence_spec(a.seq);
  SweepOptions opt;
  opt.tail.budget.nodes = cfg.budget_nodes;
  opt.tail.late_fraction = a.late_fraction;
  opt.order = a.ordered ? CoefficientOrder::ordered : CoefficientOrder::multisets;
  opt.threads = cfg.threads;
  auto r = criterion_sweep(spec, a.k_max, a.c_bound, a.m_bound, a.horizon, opt);

  for (const auto& cell : r.cells) {
    if (cfg.format == Format::plain) {
      out << "c=" << coeff_text(cell.c) << " M=" << cell.M.get_str() << ' ' << to_string(cell.status);
      if (cell.tail) out << " m=" << *cell.tail;
      out << " hits=" << cell.hits << '\n';
    } else {
      emit(out, {{"record", "cell"},
                 {"c", cell.c},
                 {"M", cell.M.get_str()},
                 {"status", to_string(cell.status)},
                 {"tail", cell.tail ? json(*cell.tail) : json(nullptr)},
                 {"hits", cell.hits},
                 {"last_hit_start", cell.last_hit_start}});
    }
  }
  const auto finite = r.count(CellStatus::finite_tail);
  const auto absent = r.count(CellStatus::no_tail_found);
  const auto cut = r.count(CellStatus::budget_exceeded);
  if (cfg.format == Format::plain) {
    out << "sequence: " << to_string(spec) << "\n"
        << "cells: " << r.cells.size() << " finite-tail: " << finite << " no-tail-found: " << absent
        << " budget-exceeded: " << cut << "\n"
        << "caveat: " << r.caveat << '\n';
  } else {
    emit(out, {{"record", "summary"},
               {"sequence", to_string(spec)},
               {"k_max", r.k_max},
               {"c_bound", r.c_bound},
               {"m_bound", r.m_bound},
               {"horizon", r.horizon},
               {"cells", r.cells.size()},
               {"finite_tail", finite},
               {"no_tail_found", absent},
               {"budget_exceeded", cut},
               {"caveat", std::string(r.caveat)}});
  }
  return cut ? budget : ok;
}

struct ViolationArgs {
  std::string seq;
  std::string c;
  std::string M;
  index_t horizon = 60;
  index_t tail = 0;
  double late_fraction = TailOptions{}.late_fraction;
  bool estimate = false;
};

inline int cmd_violations(const RunConfig& cfg, const ViolationArgs& a, std::ostream& out) {
  auto spec = parse_sequence_spec(a.seq);
  auto c = parse_list<coeff_t>(a.c);
  auto M = text::parse_bigint(a.M);
  auto terms = generate(spec, a.horizon);

  if (a.estimate) {
    TailOptions opt;
    opt.budget.nodes = cfg.budget_nodes;
    opt.late_fraction = a.late_fraction;
    auto est = estimate_tail_index(terms, c, M, a.horizon, opt);
    const std::string status = est.tail ? "finite-tail" : "no-tail-found";
    if (cfg.format == Format::plain) {
      out << "status: " << status << '\n';
      if (est.tail) out << "tail: " << *est.tail << '\n';
      out << "hits: " << est.hits << "\nlast hit start: " << est.last_hit_start << "\ncaveat: " << est.caveat
          << '\n';
    } else {
      emit(out, {{"record", "tail"},
                 {"status", status},
                 {"tail", est.tail ? json(*est.tail) : json(nullptr)},
                 {"hits", est.hits},
                 {"last_hit_start", est.last_hit_start},
                 {"late_window_start", est.late_window_start},
                 {"caveat", std::string(est.caveat)}});
    }
    return ok;
  }

  CriterionQuery q(c, M, a.horizon, a.tail);
  auto r = find_violations(terms, q, SearchBudget{cfg.budget_nodes});
  const std::string status =
      !r.exhausted ? "budget-exceeded" : (r.hits.empty() ? "no-violations" : "violations-found");
  for (const auto& h : r.hits) {
    if (cfg.format == Format::plain) {
      out << '(';
      for (std::size_t i = 0; i < h.size(); ++i) out << (i ? "," : "") << h[i];
      out << ")";
      for (auto idx : h) out << ' ' << terms[idx - 1].get_str();
      out << '\n';
    } else {
      std::vector<std::string> vals;
      for (auto idx : h) vals.push_back(terms[idx - 1].get_str());
      emit(out, {{"record", "hit"}, {"indices", h}, {"values", vals}});
    }
  }
  if (cfg.format == Format::plain) {
    out << "hits: " << r.hits.size() << "\nexhausted: " << (r.exhausted ? "true" : "false")
        << "\nstatus: " << status << '\n';
  } else {
    emit(out, {{"record", "summary"},
               {"hits", r.hits.size()},
               {"exhausted", r.exhausted},
               {"nodes", r.nodes},
               {"status", status}});
  }
  return r.exhausted ? ok : budget;
}

inline int cmd_universal(const RunConfig& cfg, const std::string& primes, std::size_t count, std::ostream& out) {
  auto terms = universal_sequence(PrimeSet::parse(primes), count);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (cfg.format == Format::plain)
      out << (i ? " " : "") << terms[i].get_str();
    else
      emit(out, {{"n", i + 1}, {"value", terms[i].get_str()}});
  }
  if (cfg.format == Format::plain) out << '\n';
  return ok;
}

struct EmbedArgs {
  std::string primes;
  index_t tail = 1;
  std::string d;
  std::string seq;
  std::size_t count = 30;
};

inline int cmd_embed(const RunConfig& cfg, const EmbedArgs& a, std::ostream& out) {
  auto s = PrimeSet::parse(a.primes);
  std::vector<mpz_class> d;
  if (!a.d.empty())
    d = parse_bigint_list(a.d);
  else if (!a.seq.empty())
    d = generate(parse_sequence_spec(a.seq), a.count);
  else
    throw parse_error("embed: give --d or --seq");
  auto k = tail_embedding(d, s, a.tail);
  if (cfg.format == Format::plain) {
    if (k)
      out << "status: embedded\nk: " << *k << '\n';
    else
      out << "status: no-tail-found\n";
  } else {
    emit(out, {{"status", k ? "embedded" : "no-tail-found"}, {"k", k ? json(*k) : json(nullptr)}, {"tail", a.tail}});
  }
  return ok;
}

// ---- driver -------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact S-unit equations, witness sets and T-sequence criterion checks", "sunits"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string format = "plain";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"plain", "json-lines"}));
  app.add_option("--budget", cfg.budget_nodes, "DFS node budget for violation searches");
  app.add_option("--ceiling", cfg.ceiling, "Ceiling on the (2E+1)^(|S|k) solver grid");
  app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for sampling harnesses");

  std::function<int()> action;

  // enumerate
  auto* en = app.add_subcommand("enumerate", "List positive S-integers in increasing order");
  std::string en_primes;
  std::optional<std::size_t> en_count;
  std::optional<std::string> en_bound;
  en->add_option("--primes", en_primes, "Prime set, e.g. 2,3")->required();
  auto* en_count_opt = en->add_option("--count", en_count, "Number of values")->check(CLI::PositiveNumber);
  auto* en_bound_opt = en->add_option("--bound", en_bound, "Largest value");
  en->callback([&] {
    if (!*en_count_opt && !*en_bound_opt) throw CLI::RequiredError("--count or --bound");
    action = [&] { return cmd_enumerate(cfg, en_primes, en_count, en_bound, out); };
  });

  // solve / witness / decompose
  std::string eq_text, sol_text, domain = "s-units";
  exponent_t exp_bound = 0;
  bool nondeg_only = false;
  auto* so = app.add_subcommand("solve", "All solutions within an exponent bound");
  so->add_option("equation", eq_text, "\"c1,...,ck = M over p1,...\"")->required();
  so->add_option("--exp-bound", exp_bound, "Sup-norm bound on exponent vectors")->required()->check(CLI::NonNegativeNumber);
  so->add_option("--domain", domain)->check(CLI::IsMember({"s-units", "s-integers"}));
  so->add_flag("--nondegenerate-only", nondeg_only);
  so->callback([&] { action = [&] { return cmd_solve(cfg, eq_text, exp_bound, domain, nondeg_only, out); }; });

  auto* wi = app.add_subcommand("witness", "Bounded witness sets V_1..V_k");
  wi->add_option("equation", eq_text)->required();
  wi->add_option("--exp-bound", exp_bound)->required()->check(CLI::NonNegativeNumber);
  wi->add_option("--domain", domain)->check(CLI::IsMember({"s-units", "s-integers"}));
  wi->callback([&] { action = [&] { return cmd_witness(cfg, eq_text, exp_bound, domain, out); }; });

  auto* de = app.add_subcommand("decompose", "Split a solution into a maximal zero-sum part and a non-degenerate rest");
  de->add_option("equation", eq_text)->required();
  de->add_option("solution", sol_text, "\"x1,...,xk\"")->required();
  de->callback([&] { action = [&] { return cmd_decompose(cfg, eq_text, sol_text, out); }; });

  // tseq
  auto* ts = app.add_subcommand("tseq", "T-sequence criterion tools");
  ts->require_subcommand(1);

  CheckArgs ck;
  auto* chk = ts->add_subcommand("check", "Sweep the criterion over bounded (c, M)");
  chk->add_option("--seq", ck.seq)->required();
  chk->add_option("--kmax", ck.k_max)->check(CLI::PositiveNumber);
  chk->add_option("--cbound", ck.c_bound)->check(CLI::PositiveNumber);
  chk->add_option("--mbound", ck.m_bound)->check(CLI::PositiveNumber);
  chk->add_option("--horizon", ck.horizon)->check(CLI::PositiveNumber);
  chk->add_option("--late-fraction", ck.late_fraction)->check(CLI::Range(0.0, 1.0));
  chk->add_flag("--ordered", ck.ordered, "Sweep every ordered coefficient tuple, not only sorted ones");
  chk->callback([&] { action = [&] { return cmd_check(cfg, ck, out); }; });

  ViolationArgs va;
  auto* vi = ts->add_subcommand("violations", "Index tuples with c_1 s_{m_1} + ... + c_k s_{m_k} = M");
  vi->add_option("--seq", va.seq)->required();
  vi->add_option("--c", va.c, "Coefficients, e.g. -1,1")->required();
  vi->add_option("--M", va.M)->required();
  vi->add_option("--horizon", va.horizon)->check(CLI::PositiveNumber);
  vi->add_option("--tail", va.tail);
  vi->add_option("--late-fraction", va.late_fraction)->check(CLI::Range(0.0, 1.0));
  vi->add_flag("--estimate-tail", va.estimate, "Report the smallest clean tail instead of hits");
  vi->callback([&] { action = [&] { return cmd_violations(cfg, va, out); }; });

  std::string un_primes;
  std::size_t un_count = 0;
  auto* un = ts->add_subcommand("universal", "Terms of the universal S-integer sequence");
  un->add_option("--primes", un_primes)->required();
  un->add_option("--count", un_count)->required()->check(CLI::PositiveNumber);
  un->callback([&] { action = [&] { return cmd_universal(cfg, un_primes, un_count, out); }; });

  EmbedArgs ea;
  auto* em = ts->add_subcommand("embed", "Where a sequence of S-integers enters the universal tail");
  em->add_option("--primes", ea.primes)->required();
  em->add_option("--tail", ea.tail, "Tail index m of the universal sequence")->check(CLI::PositiveNumber);
  em->add_option("--d", ea.d, "Terms, e.g. 2,4,8");
  em->add_option("--seq", ea.seq, "Sequence spec for the terms");
  em->add_option("--count", ea.count, "Number of terms taken from --seq")->check(CLI::PositiveNumber);
  em->callback([&] { action = [&] { return cmd_embed(cfg, ea, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
  cfg.format = format == "json-lines" ? Format::json_lines : Format::plain;

  try {
    return action ? action() : usage;
  } catch (const budget_exceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return budget;
  } catch (const parse_error& e) {
    err << "parse error: " << e.what() << '\n';
    return usage;
  } catch (const invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return usage;
  } catch (const prime_set_mismatch& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return failure;
  }
}

}  // namespace sunits::cli
