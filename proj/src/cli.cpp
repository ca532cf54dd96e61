#include "kmt/cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>

#include "kmt/cartan.hpp"
#include "kmt/liealg.hpp"
#include "kmt/rootsys.hpp"
#include "kmt/steinberg.hpp"
#include "kmt/tower.hpp"
#include "kmt/weyl.hpp"

namespace kmt {

ojson RunConfig::to_json() const {
  return {{"height_bound", height_bound},     {"search_depth", search_depth}, {"max_roots", max_roots},
          {"max_matrix_size", max_matrix_size}, {"parallelism", parallelism},   {"seed", seed}};
}

RunConfig load_config(const std::optional<std::string>& path) {
  RunConfig c;
  std::optional<std::string> p = path;
  if (!p) {
    if (const char* env = std::getenv(kConfigEnv); env && *env) p = env;
  }
  if (!p) return c;
  std::ifstream in(*p);
  if (!in) throw ConfigError("cannot read config " + *p);
  ojson j;
  try {
    j = ojson::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError("config " + *p + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [k, v] : j.items()) {
      if (k == "height_bound") c.height_bound = v.get<long>();
      else if (k == "search_depth") c.search_depth = v.get<int>();
      else if (k == "max_roots") c.max_roots = v.get<long>();
      else if (k == "max_matrix_size") c.max_matrix_size = v.get<int>();
      else if (k == "parallelism") c.parallelism = v.get<int>();
      else if (k == "seed") c.seed = v.get<std::uint64_t>();
      else throw ConfigError("unknown config key " + k);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config value: ") + e.what());
  }
  if (c.height_bound <= 0 || c.search_depth <= 0 || c.max_roots <= 0 || c.max_matrix_size <= 0 || c.parallelism <= 0)
    throw ConfigError("config values must be positive");
  return c;
}

namespace {

class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "[0,1,2]", "e2+2e3" (1-based) or "a0+a1" (0-based)
RootVector parse_root(const std::string& text, int n) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (!s.empty() && s.front() == '[') {
    RootVector v;
    try {
      v = ojson::parse(s).get<RootVector>();
    } catch (const std::exception&) {
      throw UsageError("bad root " + text);
    }
    if (static_cast<int>(v.size()) != n) throw UsageError("root " + text + " has the wrong length");
    return v;
  }
  RootVector v(n, 0);
  std::size_t i = 0;
  bool any = false;
  while (i < s.size()) {
    long sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    long coef = 1;
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) coef = std::stol(s.substr(i, j - i));
    i = j;
    if (i < s.size() && s[i] == '*') ++i;
    if (i >= s.size() || (s[i] != 'e' && s[i] != 'a')) throw UsageError("bad root " + text);
    bool one_based = s[i] == 'e';
    ++i;
    if (i < s.size() && s[i] == '_') ++i;
    j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) throw UsageError("bad root " + text);
    int idx = std::stoi(s.substr(i, j - i)) - (one_based ? 1 : 0);
    if (idx < 0 || idx >= n) throw UsageError("root index out of range in " + text);
    v[idx] += sign * coef;
    any = true;
    i = j;
  }
  if (!any) throw UsageError("bad root " + text);
  return v;
}

using Task = std::function<std::vector<Report>()>;

struct Emitter {
  std::ostream& out;
  const RunConfig& cfg;
  bool failed = false;
  void emit(Report r) {
    r.params["config"] = cfg.to_json();
    if (r.status == Status::Fail) failed = true;
    out << r.to_ndjson() << "\n";
  }
};

// Runs tasks up to cfg.parallelism at a time; output keeps task order.
void run_tasks(const std::vector<Task>& tasks, Emitter& em) {
  std::size_t width = static_cast<std::size_t>(std::max(1, em.cfg.parallelism));
  for (std::size_t start = 0; start < tasks.size(); start += width) {
    std::vector<std::future<std::vector<Report>>> batch;
    for (std::size_t i = start; i < std::min(tasks.size(), start + width); ++i)
      batch.push_back(std::async(width == 1 ? std::launch::deferred : std::launch::async, tasks[i]));
    for (auto& f : batch)
      for (auto& r : f.get()) em.emit(std::move(r));
  }
}

struct VerifyOptions {
  std::string check;
  std::string profile = "desk";
  std::optional<int> l, m, n, max_mn;
  std::optional<long> height;
  std::optional<std::string> family, type;
};

std::vector<Task> serre_tasks(const VerifyOptions& o) {
  std::vector<std::pair<std::string, int>> handles;
  if (o.type) {
    handles.push_back({*o.type, o.l.value_or(0)});
  } else {
    for (const char* t : {"A2", "B3", "C3"}) handles.push_back({t, 0});
    for (int l = 2; l <= 5; ++l) handles.push_back({"A1t", l});
    for (int l = 3; l <= 5; ++l) handles.push_back({"A2odd", l});
  }
  std::vector<Task> out;
  for (const auto& [t, l] : handles)
    out.push_back([t = t, l = l] {
      Report r = verify_defining_relations(*Algebra::build(t, l));
      r.check_id = "serre";
      r.params["type"] = t;
      if (l) r.params["l"] = l;
      return std::vector<Report>{r};
    });
  return out;
}

std::vector<Task> verify_tasks(const VerifyOptions& o, const RunConfig& cfg) {
  const std::string& c = o.check;
  std::vector<Task> out;
  auto append = [&](std::vector<Task> more) { out.insert(out.end(), more.begin(), more.end()); };
  bool all = c == "all";
  if (all && o.profile != "desk") throw UsageError("unknown profile " + o.profile);

  if (all || c == "serre") append(serre_tasks(all ? VerifyOptions{} : o));
  if (all || c == "lemma-2.8") out.push_back([] { return std::vector<Report>{verify_lemma_2_8()}; });
  if (all || c == "lemma-3.1") {
    std::vector<int> ls = (!all && o.l) ? std::vector<int>{*o.l} : std::vector<int>{3, 4, 5};
    for (int l : ls) out.push_back([l] { return std::vector<Report>{verify_lemma_3_1(l)}; });
  }
  if (all || c == "lemma-3.2") {
    AffineFamily f = (!all && o.family) ? parse_family(*o.family) : AffineFamily::A2odd;
    long H = (!all && o.height) ? *o.height : 8;
    std::vector<int> ls = (!all && o.l) ? std::vector<int>{*o.l} : std::vector<int>{3, 4};
    for (int l : ls) out.push_back([f, l, H] { return std::vector<Report>{verify_lemma_3_2(f, l, H)}; });
  }
  if (all || c == "lemma-3.3") {
    std::vector<AffineFamily> fams = (!all && o.family) ? std::vector<AffineFamily>{parse_family(*o.family)}
                                                        : std::vector<AffineFamily>{AffineFamily::A2odd, AffineFamily::A1t};
    int l = (!all && o.l) ? *o.l : 3;
    for (AffineFamily f : fams)
      out.push_back([f, l] {
        // theta(a_{l-1}, a_l)
        Gcm a = affine_gcm(f, l);
        RealRootSet set = enumerate_real_roots(a, 24);
        std::vector<RootVector> theta = theta_pair(set, simple_root(a.size(), l - 1), simple_root(a.size(), l));
        return std::vector<Report>{verify_structure_transport(f, l, theta)};
      });
  }
  if (all || c == "thm-3.5") {
    std::vector<std::pair<int, int>> blocks;
    if (!all && (o.m || o.n))
      blocks.push_back({o.m.value_or(1), o.n.value_or(1)});
    else
      blocks = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
    for (auto [m, n] : blocks) {
      if (m < 1 || n < 1) throw UsageError("block sizes must be positive");
      if (m + n > cfg.max_mn())
        throw CapError("m + n = " + std::to_string(m + n) + " exceeds the cap " + std::to_string(cfg.max_mn()));
      long H = cfg.height_bound;
      int depth = cfg.search_depth, cap = cfg.max_mn();
      out.push_back([m = m, n = n, H, depth, cap] { return std::vector<Report>{verify_thm_3_5(m, n, H, depth, cap)}; });
    }
  }
  if (all || c == "thm-1.2") {
    int mx = (!all && o.max_mn) ? *o.max_mn : 6;
    if (mx < 1 || mx > 6) throw UsageError("--max-mn must lie in 1..6");
    out.push_back([mx] { return std::vector<Report>{verify_thm_1_2_conditions(mx), thm_1_2_condition_3()}; });
  }
  if (all || c == "wbar") {
    std::vector<int> ls;
    if (!all && o.l)
      ls = {*o.l};
    else
      for (int l = 2; l <= 8; ++l) ls.push_back(l);
    for (int l : ls)
      out.push_back([l] {
        std::vector<Report> rs{verify_wbar_presentation(l, wbar_candidates(l))};
        if (l >= 3) rs.push_back(check_torus_exponent(affine_gcm(AffineFamily::A2odd, l), l));
        return rs;
      });
  }
  if (out.empty()) throw UsageError("unknown check " + c);
  return out;
}

std::ostream* open_out(const std::optional<std::string>& path, std::ofstream& file, std::ostream& fallback) {
  if (!path) return &fallback;
  file.open(*path);
  if (!file) throw UsageError("cannot write " + *path);
  return &file;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kac-Moody tower verification tool", "kmtower"};
  app.require_subcommand(1);
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "JSON config file (overrides $" + std::string(kConfigEnv) + ")");
  app.add_option("--seed", seed, "seed for sampled checks");
  app.set_version_flag("--version", kToolVersion);

  auto* gcm = app.add_subcommand("gcm", "validate or classify a generalized Cartan matrix");
  gcm->require_subcommand(1);
  std::string gcm_file;
  auto* gcm_validate = gcm->add_subcommand("validate", "check the GCM conditions");
  gcm_validate->add_option("file", gcm_file)->required();
  auto* gcm_classify = gcm->add_subcommand("classify", "identify the affine family");
  gcm_classify->add_option("file", gcm_file)->required();

  auto* roots = app.add_subcommand("roots", "real roots");
  roots->require_subcommand(1);
  auto* roots_enum = roots->add_subcommand("enumerate", "enumerate real roots up to a height bound");
  std::string family;
  int rl = 0;
  std::optional<long> rheight;
  std::optional<std::string> out_path;
  roots_enum->add_option("--family", family)->required();
  roots_enum->add_option("--l", rl)->required();
  roots_enum->add_option("--height", rheight);
  roots_enum->add_option("--out", out_path);

  auto* comm = app.add_subcommand("commutator", "normal form of [x_a(r), x_b(r')]");
  std::string ctype, cring = "poly:Q:r,s", ca, cb, cr = "r", crp = "s";
  comm->add_option("--type", ctype)->required()->check(CLI::IsMember({"A2", "B3", "C3"}));
  comm->add_option("--ring", cring);
  comm->add_option("--a", ca)->required();
  comm->add_option("--b", cb)->required();
  comm->add_option("--r", cr);
  comm->add_option("--rp", crp);

  auto* verify = app.add_subcommand("verify", "run verification checks");
  VerifyOptions vo;
  verify->add_option("check", vo.check)
      ->required()
      ->check(CLI::IsMember(
          {"serre", "lemma-2.8", "lemma-3.1", "lemma-3.2", "lemma-3.3", "thm-3.5", "thm-1.2", "wbar", "all"}));
  verify->add_option("--profile", vo.profile);
  verify->add_option("--l", vo.l);
  verify->add_option("--m", vo.m);
  verify->add_option("--n", vo.n);
  verify->add_option("--max-mn", vo.max_mn);
  verify->add_option("--height", vo.height);
  verify->add_option("--family", vo.family);
  verify->add_option("--type", vo.type);
  verify->add_option("--out", out_path);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  RunConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  if (seed) cfg.seed = *seed;
  Emitter em{out, cfg};

  try {
    if (*gcm) {
      std::string text = read_file(gcm_file);
      bool classify = gcm_classify->parsed();
      Report r(classify ? "gcm.classify" : "gcm.validate", classify ? "Section 3 (affine families)" : "Definition 2.1");
      r.params["file"] = gcm_file;
      try {
        Gcm a = Gcm::from_json(text);
        r.params["size"] = a.size();
        if (classify) {
          auto cls = classify_affine(a);
          if (cls) {
            r.params["result"] = family_tag(cls->type.family);
            r.params["l"] = cls->type.l;
            r.params["display"] = family_display_name(cls->type.family, cls->type.l);
            r.params["permutation"] = cls->perm;
          } else {
            r.params["result"] = "NotInFamilies";
          }
        } else {
          r.params["affine"] = is_connected(a) && affinity_check(a);
        }
      } catch (const GcmError& e) {
        if (e.kind == GcmError::Kind::Parse) throw UsageError(e.what());
        if (classify) {
          r.params["result"] = "NotInFamilies";
          r.note({{"invalid", e.what()}});
        } else {
          r.fail({{"error", e.what()}, {"i", e.i}, {"j", e.j}});
        }
      }
      em.emit(r);
      return em.failed ? kExitFail : kExitOk;
    }

    if (*roots) {
      AffineFamily f = parse_family(family);
      Gcm a = affine_gcm(f, rl);
      long H = rheight.value_or(cfg.height_bound);
      RealRootSet set = enumerate_real_roots(a, H, -1, static_cast<std::size_t>(cfg.max_roots));
      std::ofstream file;
      std::ostream* os = open_out(out_path, file, out);
      *os << set.to_json(family + ":" + std::to_string(rl)) << "\n";
      return kExitOk;
    }

    if (*comm) {
      Stopwatch sw;
      auto g = Algebra::build(ctype);
      Ring ring = Ring::parse(cring);
      RootVector a = parse_root(ca, g->rank()), b = parse_root(cb, g->rank());
      RingValue r = ring.parse_value(cr), rp = ring.parse_value(crp);
      RealRootSet set = enumerate_real_roots(g->gcm(), 64);
      if (!set.contains(a) || !set.contains(b)) throw UsageError("not a root of " + ctype);
      auto theta = theta_pair(set, a, b);
      auto table = StructureTable::build(g, set, theta, 64);
      UnipotentWord w = unipotent_commutator(table, a, r, b, rp);
      Report rep("commutator", "Remark 2.4");
      rep.params = {{"type", ctype}, {"ring", ring.name()}, {"a", a}, {"b", b}, {"r", r.to_string()}, {"rp", rp.to_string()}};
      rep.params["theta"] = table->order();
      rep.params["normal_form"] = w.to_json();
      if (!ring.is_polynomial()) {
        int ia = table->index_of(a), ib = table->index_of(b);
        UnipotentWord m = matrix_collect(table, ring, {{ia, r}, {ib, rp}, {ia, -r}, {ib, -rp}});
        rep.params["matrix_oracle_agrees"] = (m == w);
        if (m != w) rep.fail({{"matrix_oracle", m.to_json()}, {"collected", w.to_json()}});
      }
      rep.elapsed_ms = sw.ms();
      em.emit(rep);
      return em.failed ? kExitFail : kExitOk;
    }

    if (*verify) {
      std::vector<Task> tasks = verify_tasks(vo, cfg);
      std::ofstream file;
      std::ostream* os = open_out(out_path, file, out);
      Emitter fe{*os, cfg};
      run_tasks(tasks, fe);
      return fe.failed ? kExitFail : kExitOk;
    }
  } catch (const CapError& e) {
    err << "resource cap: " << e.what() << "\n";
    return kExitCap;
  } catch (const ResourceLimit& e) {
    err << "resource cap: " << e.what() << "\n";
    return kExitCap;
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const ScalarError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const GcmError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}

int run_command(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_command(args, out, err);
}

}  // namespace kmt
