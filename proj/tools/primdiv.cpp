// primdiv: run the campaign, query single criteria, drive the exact oracle.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage error,
// 3 internal fault or I/O failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "primdiv/cyclotomic.hpp"
#include "primdiv/linform.hpp"
#include "primdiv/oracle.hpp"
#include "primdiv/report.hpp"
#include "primdiv/sieve.hpp"

using namespace primdiv;

namespace {

enum Exit { ok = 0, mismatch = 1, usage = 2, fault = 3 };

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fixed4(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

unsigned default_workers() {
  if (const char* env = std::getenv("PRIMDIV_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end || v < 1 || v > 1024) throw precondition_error("PRIMDIV_WORKERS must be an integer in 1..1024");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void print_value(const CriterionValue& v) {
  std::cout << to_string(v.name) << "(" << v.n << ") = " << fixed4(v.lhs) << "  threshold " << fixed4(v.threshold)
            << "  margin " << fixed4(v.margin()) << "  " << (v.holds ? "holds" : "fails");
  if (v.undecided) std::cout << " (undecided)";
  if (v.guard_escalated) std::cout << " (guard-escalated)";
  if (v.minimizer) std::cout << "  r = " << *v.minimizer;
  std::cout << "\n";
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out << body;
  out.flush();
  if (!out) throw io_error("write to " + path + " failed");
}

void print_campaign_text(const CampaignReport& rep) {
  std::cout << "mode " << to_string(rep.config.mode) << "\n";
  std::cout << "omega  n_k        scanned  candidates  failing  max_failing  closed\n";
  for (const auto& c : rep.classes) {
    char line[160];
    std::snprintf(line, sizeof line, "%-6u %-10llu %-8llu %-11llu %-8zu %-12s %s\n", c.omega,
                  static_cast<unsigned long long>(c.n_k), static_cast<unsigned long long>(c.scan_bound),
                  static_cast<unsigned long long>(c.candidates), c.failing.size(),
                  c.max_failing ? std::to_string(*c.max_failing).c_str() : "-", c.closed ? "yes" : "no");
    std::cout << line;
  }
  for (const auto& c : rep.classes)
    if (!c.rescued_beyond_paper.empty())
      std::cout << "omega=" << c.omega << ": " << c.rescued_beyond_paper.size() << " n rescued beyond paper cascade\n";
  for (const auto& d : rep.summary.diagnostics) std::cout << "note: " << d << "\n";
  std::cout << "global closure: ";
  print_value(rep.summary.global_closure);
  std::cout << "max failing n = "
            << (rep.summary.global_max_failing ? std::to_string(*rep.summary.global_max_failing) : "none") << "\n";
  std::cout << (rep.summary.reproduced ? "reproduced: every n > 30030 is covered\n"
                                       : "NOT reproduced: coverage incomplete or threshold differs\n");
}

BigInt parse_big(const std::string& s, const char* what) {
  try {
    return BigInt(s);
  } catch (const std::exception&) {
    throw precondition_error(std::string(what) + ": not an integer: " + s);
  }
}

LehmerPair build_pair(const std::string& kind, const std::string& R, const std::string& Q, const std::string& P) {
  const BigInt q = parse_big(Q, "--Q");
  if (kind == "lehmer") {
    if (R.empty()) throw precondition_error("--R is required for lehmer pairs");
    return make_lehmer(parse_big(R, "--R"), q);
  }
  if (!P.empty()) return make_lucas(parse_big(P, "--P"), q);
  if (R.empty()) throw precondition_error("--P or --R is required for lucas pairs");
  const BigInt r = parse_big(R, "--R");
  if (r <= 0) throw precondition_error("--R must be a positive square for lucas pairs");
  const BigInt p = sqrt(r);
  if (p * p != r) throw precondition_error("--R must be a perfect square P^2 for lucas pairs");
  return make_lucas(p, q);
}

json pair_json(const LehmerPair& p) {
  json j{{"kind", to_string(p.kind)}, {"R", p.R.str()}, {"Q", p.Q.str()}};
  if (p.kind == PairKind::lucas) j["P"] = p.P.str();
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Primitive divisors of Lucas and Lehmer numbers: campaign and oracle"};
  app.require_subcommand(1);

  // campaign
  auto* camp = app.add_subcommand("campaign", "run the per-omega campaign");
  std::string mode = "paper", out_path, format = "json";
  std::vector<std::string> bounds;
  unsigned workers = 0;
  double guard = default_guard, near = 0.5;
  unsigned bits = default_precision_bits;
  bool camp_json = false;
  camp->add_option("--mode", mode, "paper or maximal")->check(CLI::IsMember({"paper", "maximal"}));
  camp->add_option("--bound", bounds, "class bound override k=N (repeatable)");
  camp->add_option("--workers", workers, "worker threads (default PRIMDIV_WORKERS or CPU count)");
  camp->add_option("--guard", guard, "relative guard band");
  camp->add_option("--precision-bits", bits, "escalation precision");
  camp->add_option("--near-margin", near, "list passing n with margin below this");
  camp->add_option("--out", out_path, "report file");
  camp->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv", "text"}));
  camp->add_flag("--json", camp_json, "print the JSON report to stdout");

  // value
  auto* val = app.add_subcommand("value", "evaluate one criterion");
  std::string crit;
  std::uint64_t vn = 0;
  bool val_json = false;
  val->add_option("criterion", crit, "secondineq, F, theta_threshold, aux_n14, aux_2n14, global, prime_case")->required();
  val->add_option("n", vn, "index")->required();
  val->add_option("--guard", guard, "relative guard band");
  val->add_option("--precision-bits", bits, "escalation precision");
  val->add_flag("--json", val_json);

  // c1
  auto* c1c = app.add_subcommand("c1", "evaluate c1(B, d)");
  std::uint64_t B = 0;
  unsigned d = 2;
  bool c1_json = false;
  c1c->add_option("B", B)->required();
  c1c->add_option("--d", d, "degree");
  c1c->add_flag("--json", c1_json);

  // table1
  auto* t1 = app.add_subcommand("table1", "print the class search bounds");
  bool t1_json = false;
  t1->add_flag("--json", t1_json);

  // lemma2-verify
  auto* l2 = app.add_subcommand("lemma2-verify", "derive and check the interpolation parameters");
  unsigned D = 1;
  double h = 0;
  std::uint64_t b1 = 1, b2 = 1;
  bool l2_json = false;
  l2->set_help_flag("--help", "print this help message and exit");
  l2->add_option("--D", D, "half degree")->required();
  l2->add_option("--h", h, "height of gamma")->required();
  l2->add_option("--b1", b1, "first coefficient")->required();
  l2->add_option("--b2", b2, "second coefficient")->required();
  l2->add_flag("--json", l2_json, "emit JSON");

  // oracle
  auto* orc = app.add_subcommand("oracle", "exact sequence computations");
  std::string oR, oQ, oP, kind = "lehmer", action;
  std::uint64_t on = 0, from = 1;
  bool o_json = false;
  orc->add_option("--R", oR, "(alpha+beta)^2; for lucas pairs a perfect square P^2");
  orc->add_option("--Q", oQ, "alpha*beta")->required();
  orc->add_option("--P", oP, "alpha+beta (lucas)");
  orc->add_option("--kind", kind)->check(CLI::IsMember({"lucas", "lehmer"}));
  orc->add_option("action", action, "u, phi, primdiv or stewart")
      ->required()
      ->check(CLI::IsMember({"u", "phi", "primdiv", "stewart"}));
  orc->add_option("n", on, "index (upper end for stewart)")->required();
  orc->add_option("--from", from, "lower end for stewart");
  orc->add_flag("--json", o_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? Exit::ok : Exit::usage;
  }

  try {
    const GuardPolicy policy{guard, bits};
    policy.validate();

    if (*camp) {
      CampaignConfig cfg;
      cfg.mode = mode == "paper" ? CascadeMode::paper : CascadeMode::maximal;
      cfg.guard = policy;
      cfg.near_margin = near;
      cfg.workers = workers ? workers : default_workers();
      for (const auto& b : bounds) {
        const auto eq = b.find('=');
        if (eq == std::string::npos) throw precondition_error("--bound expects k=N, got " + b);
        try {
          cfg.class_bounds[static_cast<unsigned>(std::stoul(b.substr(0, eq)))] = std::stoull(b.substr(eq + 1));
        } catch (const std::logic_error&) {
          throw precondition_error("--bound expects k=N, got " + b);
        }
      }
      const CampaignReport rep = run_campaign(cfg);
      if (!out_path.empty()) {
        if (format == "json") {
          write_file(out_path, dump_report(rep));
        } else if (format == "csv") {
          std::ostringstream os;
          write_csv(os, rep);
          write_file(out_path, os.str());
        } else {
          std::ostringstream os;
          auto* old = std::cout.rdbuf(os.rdbuf());
          print_campaign_text(rep);
          std::cout.rdbuf(old);
          write_file(out_path, os.str());
        }
      }
      if (camp_json)
        std::cout << dump_report(rep);
      else
        print_campaign_text(rep);
      return rep.summary.reproduced ? Exit::ok : Exit::mismatch;
    }

    if (*val) {
      const auto c = criterion_from_string(crit);
      if (!c) throw precondition_error("unknown criterion " + crit);
      const CriterionValue v = evaluate_criterion(*c, vn, policy);
      if (val_json)
        std::cout << to_json(v).dump(2) << "\n";
      else
        print_value(v);
      return Exit::ok;
    }

    if (*c1c) {
      const double v = c1(B, d);
      if (c1_json)
        std::cout << json{{"B", B}, {"d", d}, {"c1", v}, {"liouville", c1_liouville_branch(B, d)},
                          {"lmn", c1_lmn_branch(B, d)}}
                         .dump(2)
                  << "\n";
      else
        std::cout << "c1(" << B << ", " << d << ") = " << fixed4(v) << "  (liouville " << fixed4(c1_liouville_branch(B, d))
                  << ", lmn " << fixed4(c1_lmn_branch(B, d)) << ")\n";
      return Exit::ok;
    }

    if (*t1) {
      if (t1_json) {
        json j = json::array();
        for (const auto& b : table1) j.push_back({{"k", b.k}, {"n_k", b.n_k}});
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "k  n_k\n";
        for (const auto& b : table1) std::cout << b.k << "  " << b.n_k << "\n";
      }
      return Exit::ok;
    }

    if (*l2) {
      const auto inst = make_instance(2 * D, h, b1, b2);
      const LMNParams p = lemma2_params(inst);
      const EqCondReport r = verify_eq_cond(p, inst, policy);
      if (l2_json) {
        json checks = json::array();
        for (const auto& c : r.checks)
          checks.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds},
                            {"escalated", c.escalated}, {"tight", c.tight}});
        std::cout << json{{"params",
                           {{"rho", p.rho}, {"lambda", p.lambda}, {"a", p.a}, {"H", p.H}, {"h", p.h},
                            {"b_prime", p.b_prime}, {"L", p.L}, {"K", p.K}, {"R", p.R}, {"S1", p.S1},
                            {"S2", p.S2}, {"S", p.S}, {"N", p.N}, {"g", p.g}, {"log_b", p.log_b},
                            {"phi", p.phi_total}, {"phi1", p.phi1}, {"phi2", p.phi2}, {"phi21", p.phi21},
                            {"phi22", p.phi22}}},
                          {"checks", std::move(checks)},
                          {"zero_estimate_assumed", r.zero_estimate_assumed},
                          {"all_ok", r.all_ok}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << "a = " << fixed4(p.a) << "  H = " << fixed4(p.H) << "  h = " << fixed4(p.h) << "\n"
                  << "L = " << p.L << "  K = " << p.K << "  R = " << p.R << "  S1 = " << p.S1 << "  S2 = " << p.S2
                  << "  S = " << p.S << "  N = " << p.N << "\n"
                  << "g = " << fixed4(p.g) << "  log b = " << fixed4(p.log_b) << "\n"
                  << "Phi = " << fixed4(p.phi_total) << "  Phi1 = " << fixed4(p.phi1) << "  Phi2 = " << fixed4(p.phi2)
                  << "  Phi21 = " << fixed4(p.phi21) << "  Phi22 = " << fixed4(p.phi22) << "\n";
        for (const auto& c : r.checks)
          std::cout << "  " << (c.holds ? "ok   " : "FAIL ") << c.name << ": " << fixed4(c.lhs) << " > " << fixed4(c.rhs)
                    << (c.escalated ? " (guard-escalated)" : "") << (c.tight ? " (tight)" : "") << "\n";
        std::cout << "zero estimate: distinct-products branch assumed\n";
        std::cout << (r.all_ok ? "all conditions hold\n" : "some condition fails\n");
      }
      return r.all_ok ? Exit::ok : Exit::mismatch;
    }

    if (*orc) {
      const LehmerPair pair = build_pair(kind, oR, oQ, oP);
      json j{{"pair", pair_json(pair)}, {"action", action}, {"n", on}};
      int rc = Exit::ok;
      if (action == "u") {
        const auto u = lehmer_u(pair, on);
        j["value"] = u.value.str();
        j["delta"] = u.delta;
        if (!o_json) std::cout << "u_" << on << " = " << u.value << "\n";
      } else if (action == "phi") {
        const BigInt v = phi_n_exact(pair, on);
        j["value"] = v.str();
        if (!o_json) std::cout << "Phi_" << on << " = " << v << "\n";
      } else if (action == "primdiv") {
        const auto r = primitive_divisor_check(pair, on);
        json w = json::array();
        for (const auto& p : r.witnesses) w.push_back(p.str());
        j["has_primitive"] = r.has_primitive;
        j["witnesses"] = std::move(w);
        j["witnesses_complete"] = r.witnesses_complete;
        j["witnesses_probable"] = r.witnesses_probable;
        if (!o_json) {
          if (!r.has_primitive) {
            std::cout << "u_" << on << ": no primitive divisor\n";
          } else {
            std::cout << "u_" << on << ": primitive divisor";
            for (const auto& p : r.witnesses) std::cout << " " << p;
            if (!r.witnesses_complete) std::cout << " (witness list incomplete)";
            if (r.witnesses_probable) std::cout << " (probable primes)";
            std::cout << "\n";
          }
        }
      } else {
        const auto r = stewart_crosscheck(pair, from, on, false);
        j["from"] = from;
        j["small_phi"] = r.small_phi;
        j["counterexamples"] = r.counterexamples;
        j["recorded_exceptions"] = r.recorded_exceptions;
        if (!o_json) {
          std::cout << "n in [" << from << ", " << on << "], |Phi_n| <= n at:";
          for (auto n : r.small_phi) std::cout << " " << n;
          std::cout << "\ncounterexamples: " << r.counterexamples.size() << "\n";
          if (!r.recorded_exceptions.empty()) {
            std::cout << "recorded (criterion not asserted):";
            for (auto n : r.recorded_exceptions) std::cout << " " << n;
            std::cout << "\n";
          }
        }
        if (!r.counterexamples.empty()) rc = Exit::fault;
      }
      if (o_json) std::cout << j.dump(2) << "\n";
      return rc;
    }
  } catch (const precondition_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Exit::usage;
  } catch (const io_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return Exit::fault;
  } catch (const std::exception& e) {
    std::cerr << "internal fault: " << e.what() << "\n";
    return Exit::fault;
  }
  return Exit::usage;
}
