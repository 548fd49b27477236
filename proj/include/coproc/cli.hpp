#pragma once

// Command-line front end. run_command parses argv-style arguments, runs one
// subcommand and returns the exit code:
//   0  success, or a checked property holds
//   1  a checked property fails (not bisimilar, not <=, out of fuel, ...)
//   2  bad input or usage
// Reports go to `out`, diagnostics to `err`.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "coproc/catcomp.hpp"
#include "coproc/dyadic.hpp"
#include "coproc/error.hpp"
#include "coproc/games.hpp"
#include "coproc/hfgraph.hpp"
#include "coproc/intcat.hpp"
#include "coproc/proc.hpp"
#include "coproc/reals.hpp"

namespace coproc::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Errors from a file get the file name in front.
template <typename F>
auto with_file(const std::string& path, F&& parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline bool looks_inline_game(const std::string& s) {
  return !s.empty() && (s[0] == '{' || s[0] == '*' || s[0] == '-' || std::isdigit(static_cast<unsigned char>(s[0])));
}

inline games::SignedGame load_game(const std::string& arg) {
  if (looks_inline_game(arg)) {
    std::ifstream probe(arg);
    if (!probe) return games::parse_game_literal(arg);
  }
  return with_file(arg, [](const std::string& t) { return games::parse_sg(t); });
}

inline catcomp::TermPtr load_term(const std::string& arg) {
  if (!arg.empty() && arg[0] == '(') return catcomp::parse_term(arg);
  return with_file(arg, [](const std::string& t) { return catcomp::parse_term(t); });
}

inline std::string show_signs(const reals::SignString& s) {
  const std::string v = s.str();
  return v.empty() ? "\"\"" : v;
}

inline std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

inline std::uint64_t parse_nat(const std::string& s, const char* what) {
  std::int64_t v = 0;
  if (!coproc::detail::parse_int64(s, v) || v < 0) throw InputError(std::string(what) + ": expected a natural number, got '" + s + "'");
  return static_cast<std::uint64_t>(v);
}

// "A=2,Y=1,B=2"
inline intcat::Blocks parse_blocks(const std::string& text) {
  intcat::Blocks b;
  bool seen[3] = {false, false, false};
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq != 1) throw InputError("--blocks: expected A=n,Y=n,B=n, got '" + text + "'");
    const std::uint64_t n = parse_nat(item.substr(2), "--blocks");
    switch (item[0]) {
      case 'A': b.a = n; seen[0] = true; break;
      case 'Y': b.y = n; seen[1] = true; break;
      case 'B': b.b = n; seen[2] = true; break;
      default: throw InputError("--blocks: unknown block '" + item.substr(0, 1) + "'");
    }
  }
  if (!seen[0] || !seen[1] || !seen[2]) throw InputError("--blocks: A, Y and B are all required");
  return b;
}

// "m,p:m,p:m,p" -> three Int objects over relations.
inline std::vector<intcat::IntObj<intcat::RelInstance>> parse_objects(const std::string& text) {
  std::vector<intcat::IntObj<intcat::RelInstance>> out;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ':');) {
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw InputError("--objects: expected m,p:m,p:m,p");
    out.push_back({parse_nat(item.substr(0, comma), "--objects"), parse_nat(item.substr(comma + 1), "--objects")});
  }
  if (out.size() != 3) throw InputError("--objects: expected exactly three objects");
  return out;
}

inline void print_game(std::ostream& out, const games::SignedGame& g, bool sg) {
  if (sg) games::write_sg(out, g);
  else out << games::to_literal(g) << '\n';
}

}  // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  CLI::App app{"coproc: bisimulation, hypersets, games, sign expansions, Int and a toy computer", "coproc"};
  app.require_subcommand(1);

  std::string mode_opt;
  std::size_t depth = 4;
  std::uint64_t fuel = catcomp::default_fuel;
  bool close = false, tag = false, sg_out = false, allow4 = false, async_form = false;
  std::string a1, a2, a3, blocks_opt, objects_opt;
  std::optional<std::size_t> max_len;
  std::size_t tower_n = 0;
  std::uint64_t zm = 0, zp = 0;

  // hfset
  auto* hf = app.add_subcommand("hfset", "hereditarily finite sets and hypersets (.hg)");
  hf->require_subcommand(1);
  auto* hf_canon = hf->add_subcommand("canon", "canonical form and digest");
  hf_canon->add_option("graph", a1, ".hg file")->required();
  hf_canon->add_option("--mode", mode_opt, "strong|reflexive (default: as in the file)");
  auto* hf_bisim = hf->add_subcommand("bisim", "decide bisimilarity");
  hf_bisim->add_option("first", a1)->required();
  hf_bisim->add_option("second", a2)->required();
  hf_bisim->add_option("--mode", mode_opt, "strong|reflexive");
  auto* hf_tower = hf->add_subcommand("tower", "stage n of the powerset tower");
  hf_tower->add_option("n", tower_n)->required();
  hf_tower->add_flag("--allow-stage4", allow4, "permit the 65536-element stage");

  // proc
  auto* pr = app.add_subcommand("proc", "safety specs (.spec) and Mealy machines (.mealy)");
  pr->require_subcommand(1);
  auto* pr_unfold = pr->add_subcommand("unfold", "output table of a machine");
  pr_unfold->add_option("machine", a1)->required();
  pr_unfold->add_option("--depth", depth)->default_val(4);
  auto* pr_cum = pr->add_subcommand("cumulative", "cumulative output histories of a machine");
  pr_cum->add_option("machine", a1)->required();
  pr_cum->add_option("--depth", depth)->default_val(4);
  pr_cum->add_flag("--async", async_form, "skip deleted outputs");
  auto* pr_bisim = pr->add_subcommand("bisim", "greatest bisimulation between two specs");
  pr_bisim->add_option("first", a1)->required();
  pr_bisim->add_option("second", a2)->required();
  pr_bisim->add_option("--mode", mode_opt, "strong|weak");
  pr_bisim->add_flag("--close", close, "take the prefix closure of the histories");
  auto* pr_comp = pr->add_subcommand("compose", "compose the greatest witnesses S~T and T~U");
  pr_comp->add_option("first", a1)->required();
  pr_comp->add_option("second", a2)->required();
  pr_comp->add_option("third", a3)->required();
  pr_comp->add_option("--mode", mode_opt, "strong|weak");
  pr_comp->add_flag("--close", close);
  auto* pr_shuf = pr->add_subcommand("shuffle", "all interleavings of two specs");
  pr_shuf->add_option("first", a1)->required();
  pr_shuf->add_option("second", a2)->required();
  pr_shuf->add_flag("--tag", tag, "prefix tokens with 1. and 2.");
  pr_shuf->add_flag("--close", close);

  // game
  auto* gm = app.add_subcommand("game", "signed games (.sg files or inline literals like {0|1})");
  gm->require_subcommand(1);
  auto game_cmd = [&](const char* name, const char* help, int arity) {
    auto* c = gm->add_subcommand(name, help);
    c->add_option("first", a1)->required();
    if (arity > 1) c->add_option("second", a2)->required();
    return c;
  };
  auto* gm_leq = game_cmd("leq", "Conway order a <= b", 2);
  auto* gm_strat = game_cmd("strategy", "greatest hyperstrategy from a to b", 2);
  gm_strat->add_option("--mode", mode_opt, "sync|async");
  auto* gm_neg = game_cmd("neg", "negation", 1);
  auto* gm_add = game_cmd("add", "sum", 2);
  auto* gm_mul = game_cmd("mul", "product of numeric games", 2);
  auto* gm_value = game_cmd("value", "sign string and value of a numeric game", 1);
  auto* gm_trans = game_cmd("transitive", "epsilon-transitivity", 1);
  for (auto* c : {gm_neg, gm_add, gm_mul}) c->add_flag("--sg", sg_out, "print in .sg format");

  // real
  auto* rl = app.add_subcommand("real", "sign strings and dyadics");
  rl->require_subcommand(1);
  auto* rl_phi = rl->add_subcommand("phi", "value of a sign string");
  rl_phi->add_option("first", a1)->required();
  auto* rl_enc = rl->add_subcommand("encode", "sign string of a number");
  rl_enc->add_option("number", a1)->required();
  rl_enc->add_option("--max-len", max_len, "truncate (needed for non-dyadic input)");
  auto* rl_cmp = rl->add_subcommand("cmp", "lexicographic comparison");
  rl_cmp->add_option("first", a1)->required();
  rl_cmp->add_option("second", a2)->required();
  auto* rl_gamma = rl->add_subcommand("gamma", "game of a sign string");
  rl_gamma->add_option("first", a1)->required();
  rl_gamma->add_flag("--sg", sg_out, "print in .sg format");
  auto* rl_ups = rl->add_subcommand("upsilon", "sign string of a numeric game");
  rl_ups->add_option("game", a1)->required();

  // int
  auto* in = app.add_subcommand("int", "traced relations and the Int construction");
  in->require_subcommand(1);
  auto* in_trace = in->add_subcommand("trace", "trace of f : A+Y -> B+Y");
  in_trace->add_option("first", a1)->required();
  in_trace->add_option("--blocks", blocks_opt, "A=n,Y=n,B=n")->required();
  auto* in_comp = in->add_subcommand("compose", "f then g, as relations or as Int morphisms");
  in_comp->add_option("first", a1)->required();
  in_comp->add_option("second", a2)->required();
  in_comp->add_option("--objects", objects_opt, "Int objects A:B:C as minus,plus each");
  auto* in_z = in->add_subcommand("znorm", "normal form of <minus,plus>");
  in_z->add_option("minus", zm)->required();
  in_z->add_option("plus", zp)->required();

  // comp
  auto* cp = app.add_subcommand("comp", "the toy computer (.tm terms, or inline S-expressions)");
  cp->require_subcommand(1);
  auto* cp_eval = cp->add_subcommand("eval", "evaluate a closed term");
  cp_eval->add_option("term", a1)->required();
  auto* cp_spec = cp->add_subcommand("specialize", "fix the first argument");
  cp_spec->add_option("program", a1)->required();
  cp_spec->add_option("arg", a2, "natural literal or term")->required();
  auto* cp_step = cp->add_subcommand("step", "one step of a program as a process");
  cp_step->add_option("program", a1)->required();
  cp_step->add_option("input", a2)->required();
  auto* cp_fix = cp->add_subcommand("fix", "fixpoint of a program transformer");
  cp_fix->add_option("transformer", a1)->required();
  auto* cp_compile = cp->add_subcommand("compile", "programs for the states of a Mealy machine");
  cp_compile->add_option("machine", a1)->required();
  for (auto* c : {cp_eval, cp_step}) c->add_option("--fuel", fuel)->default_val(catcomp::default_fuel);

  // Sign strings and negative numbers look like flags; shield them from
  // the option parser.
  static const std::regex dashy(R"(^[-+]+$|^-inf$|^-[0-9])");
  constexpr char shield = '\x1f';
  std::vector<std::string> rev;
  for (auto it = args.rbegin(); it != args.rend(); ++it)
    rev.push_back(std::regex_search(*it, dashy) ? shield + *it : *it);
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  for (std::string* a : {&a1, &a2, &a3})
    if (!a->empty() && (*a)[0] == shield) a->erase(0, 1);
  if (mode_opt.empty() && !*hf_canon) mode_opt = *gm_strat ? "async" : "strong";

  auto fail = [&](const std::string& msg) {
    err << msg << '\n';
    return 1;
  };

  try {
    // hfset
    if (*hf_canon) {
      hf::HGraph g = detail::with_file(a1, [](const std::string& t) { return hf::parse_hg(t); });
      if (mode_opt == "reflexive") g = g.with_mode(true);
      else if (mode_opt == "strong") g = g.with_mode(false);
      else if (!mode_opt.empty()) throw InputError("--mode must be strong or reflexive");
      const auto c = hf::canon(g);
      out << "# digest " << detail::hex(c.digest) << '\n';
      hf::write_hg(out, c.graph);
      return 0;
    }
    if (*hf_bisim) {
      const auto g = detail::with_file(a1, [](const std::string& t) { return hf::parse_hg(t); });
      const auto h = detail::with_file(a2, [](const std::string& t) { return hf::parse_hg(t); });
      if (mode_opt != "strong" && mode_opt != "reflexive") throw InputError("--mode must be strong or reflexive");
      const bool yes = hf::bisimilar(g, h, mode_opt == "strong" ? hf::Mode::strong : hf::Mode::reflexive);
      out << (yes ? "bisimilar" : "not bisimilar") << '\n';
      return yes ? 0 : 1;
    }
    if (*hf_tower) {
      const auto stage = hf::pow_tower(tower_n, allow4);
      out << "stage " << tower_n << ": " << stage.size() << " elements\n";
      for (const auto& s : stage)
        out << detail::hex(s.digest) << "  nodes=" << s.graph.node_count() << " edges=" << s.graph.edge_count() << '\n';
      return 0;
    }

    // proc
    auto load_spec = [&](const std::string& path) {
      return detail::with_file(path, [&](const std::string& t) { return proc::parse_spec(t, close); });
    };
    auto load_mealy = [&](const std::string& path) {
      return detail::with_file(path, [](const std::string& t) { return proc::parse_mealy(t); });
    };
    auto proc_mode = [&]() {
      if (mode_opt == "strong") return proc::Mode::strong;
      if (mode_opt == "weak") return proc::Mode::weak;
      throw InputError("--mode must be strong or weak");
    };
    auto show_hist = [](const proc::SafetySpec& S, proc::NodeId v) {
      const auto h = S.history(v);
      return h.empty() ? std::string("()") : S.alphabet().render(h);
    };
    if (*pr_unfold) {
      const auto m = load_mealy(a1);
      for (const auto& [h, o] : proc::unfold(m, depth))
        out << m.inputs().render(h) << " -> " << (o ? m.outputs().token(*o) : std::string("_")) << '\n';
      return 0;
    }
    if (*pr_cum) {
      const auto m = load_mealy(a1);
      const auto f = proc::unfold(m, depth);
      proc::HistoryTable lifted;
      if (async_form) {
        lifted = proc::cumulative_async(f, depth);
      } else {
        proc::OutputTable total;
        for (const auto& [h, o] : f) {
          if (!o) throw DomainError("machine deletes an output; use --async");
          total.emplace(h, *o);
        }
        lifted = proc::cumulative(total, depth);
      }
      for (const auto& [h, o] : lifted) out << m.inputs().render(h) << " -> " << m.outputs().render(o) << '\n';
      return 0;
    }
    if (*pr_bisim) {
      const auto S = load_spec(a1), T = load_spec(a2);
      const auto r = proc::greatest_bisim(S, T, proc_mode());
      if (!r) return fail("no " + mode_opt + " bisimulation relates the roots");
      for (const auto& [s, t] : r->pairs) out << show_hist(S, s) << " ~ " << show_hist(T, t) << '\n';
      return 0;
    }
    if (*pr_comp) {
      const auto S = load_spec(a1), T = load_spec(a2), U = load_spec(a3);
      const auto mode = proc_mode();
      const auto r1 = proc::greatest_bisim(S, T, mode);
      if (!r1) return fail("no " + mode_opt + " bisimulation between the first two specs");
      const auto r2 = proc::greatest_bisim(T, U, mode);
      if (!r2) return fail("no " + mode_opt + " bisimulation between the last two specs");
      const auto r = proc::compose_rel(*r1, *r2);
      for (const auto& [s, u] : r.pairs) out << show_hist(S, s) << " ~ " << show_hist(U, u) << '\n';
      const auto check = proc::verify_bisim(r, S, U, mode);
      if (!check.is_witness()) return fail("composite is not a " + mode_opt + " bisimulation witness");
      return 0;
    }
    if (*pr_shuf) {
      proc::write_spec(out, proc::shuffle(load_spec(a1), load_spec(a2), tag));
      return 0;
    }

    // game
    if (*gm_leq) {
      const bool yes = games::leq(detail::load_game(a1), detail::load_game(a2));
      out << (yes ? "true" : "false") << '\n';
      return yes ? 0 : 1;
    }
    if (*gm_strat) {
      games::StrategyMode m;
      if (mode_opt == "sync") m = games::StrategyMode::sync;
      else if (mode_opt == "async") m = games::StrategyMode::async;
      else throw InputError("--mode must be sync or async");
      const auto s = detail::load_game(a1), t = detail::load_game(a2);
      const auto r = games::hyperstrategy(s, t, m);
      if (!r) return fail("no " + mode_opt + " hyperstrategy relates the roots");
      for (const auto& [u, v] : r->pairs) out << u << ' ' << v << '\n';
      return 0;
    }
    if (*gm_neg) { detail::print_game(out, games::neg(detail::load_game(a1)), sg_out); return 0; }
    if (*gm_add) { detail::print_game(out, games::add(detail::load_game(a1), detail::load_game(a2)), sg_out); return 0; }
    if (*gm_mul) { detail::print_game(out, games::mul(detail::load_game(a1), detail::load_game(a2)), sg_out); return 0; }
    if (*gm_value) {
      const Dyadic v = reals::game_value(detail::load_game(a1));
      out << detail::show_signs(reals::encode(ExtReal(v))) << " (" << v << ")\n";
      return 0;
    }
    if (*gm_trans) {
      const bool yes = games::is_transitive(detail::load_game(a1));
      out << (yes ? "transitive" : "not transitive") << '\n';
      return yes ? 0 : 1;
    }

    // real
    if (*rl_phi) { out << reals::phi(reals::SignString::parse(a1)) << '\n'; return 0; }
    if (*rl_enc) {
      if (a1 == "inf" || a1 == "+inf") { out << "inf\n"; return 0; }
      if (a1 == "-inf") { out << "-inf\n"; return 0; }
      const Rational x = parse_rational(a1);
      if (max_len) out << detail::show_signs(reals::encode_approx(x, *max_len)) << '\n';
      else out << detail::show_signs(reals::encode(x)) << '\n';
      return 0;
    }
    if (*rl_cmp) {
      const auto c = reals::lex_cmp(reals::SignString::parse(a1), reals::SignString::parse(a2));
      out << (c < 0 ? "<" : c > 0 ? ">" : "=") << '\n';
      return 0;
    }
    if (*rl_gamma) { detail::print_game(out, reals::gamma(reals::SignString::parse(a1)), sg_out); return 0; }
    if (*rl_ups) { out << detail::show_signs(reals::upsilon(detail::load_game(a1))) << '\n'; return 0; }

    // int
    if (*in_trace) {
      const auto b = detail::parse_blocks(blocks_opt);
      const auto f = detail::with_file(a1, [&](const std::string& t) {
        std::istringstream is(t);
        return intcat::parse_traced_rel(is, b);
      });
      intcat::write_rel(out, intcat::rel_trace(f, b));
      return 0;
    }
    if (*in_comp) {
      auto load = [](const std::string& path) {
        return detail::with_file(path, [](const std::string& t) {
          std::istringstream is(t);
          return intcat::parse_rel(is);
        });
      };
      const auto f = load(a1), g = load(a2);
      if (objects_opt.empty()) {
        intcat::write_rel(out, intcat::rel_compose(f, g));
        return 0;
      }
      const auto o = detail::parse_objects(objects_opt);
      using Mor = intcat::IntMor<intcat::RelInstance>;
      const auto h = intcat::int_compose(Mor(o[0], o[1], f), Mor(o[1], o[2], g));
      intcat::write_rel(out, h.base);
      return 0;
    }
    if (*in_z) {
      const auto z = intcat::znorm({zm, zp});
      out << z.str() << "  (" << z.value() << ")\n";
      return 0;
    }

    // comp
    if (*cp_eval) {
      const auto r = catcomp::eval(detail::load_term(a1), fuel);
      if (!r.ok()) return fail("out of fuel");
      out << catcomp::to_string(r.value()) << '\n';
      return 0;
    }
    if (*cp_spec) {
      const auto p = detail::load_term(a1);
      std::int64_t n = 0;
      const auto a = coproc::detail::parse_int64(a2, n) && n >= 0 ? catcomp::lit(static_cast<std::uint64_t>(n))
                                                                  : detail::load_term(a2);
      out << catcomp::to_string(catcomp::specialize(p, a)) << '\n';
      return 0;
    }
    if (*cp_step) {
      const auto r = catcomp::step(detail::load_term(a1), detail::parse_nat(a2, "input"), fuel);
      if (!r) return fail("out of fuel");
      out << "output " << r->output << '\n' << catcomp::to_string(r->residual) << '\n';
      return 0;
    }
    if (*cp_fix) { out << catcomp::to_string(catcomp::fix(detail::load_term(a1))) << '\n'; return 0; }
    if (*cp_compile) {
      const auto m = load_mealy(a1);
      const auto programs = catcomp::compile_mealy(m);
      out << "# inputs:";
      for (std::size_t i = 0; i < m.inputs().size(); ++i) out << ' ' << m.inputs().token(static_cast<proc::Symbol>(i)) << '=' << i;
      out << "\n# outputs: _=0";
      for (std::size_t i = 0; i < m.outputs().size(); ++i) out << ' ' << m.outputs().token(static_cast<proc::Symbol>(i)) << '=' << i + 1;
      out << '\n';
      for (std::size_t x = 0; x < programs.size(); ++x) out << "state " << x << ' ' << catcomp::to_string(programs[x]) << '\n';
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  err << app.help();
  return 2;
}

inline int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_command(args);
}

}  // namespace coproc::cli
