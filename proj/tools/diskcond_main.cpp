#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "diskcond/builder.hpp"
#include "diskcond/disk_condition.hpp"
#include "diskcond/homology.hpp"
#include "diskcond/manifold.hpp"
#include "diskcond/solver.hpp"

namespace {

using diskcond::Json;

constexpr int kExitOk = 0;
constexpr int kExitNontrivial = 10;
constexpr int kExitInvalid = 2;
constexpr int kExitResource = 3;
constexpr int kExitUsage = 64;

std::optional<Json> read_json(const std::string& path, std::string* err) {
  std::ifstream in(path);
  if (!in) {
    *err = "cannot open " + path;
    return std::nullopt;
  }
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    *err = "malformed JSON in " + path;
    return std::nullopt;
  }
  return j;
}

bool write_text(const std::string& path, const std::string& text, std::string* err) {
  std::ofstream out(path);
  if (!out) {
    *err = "cannot write " + path;
    return false;
  }
  out << text;
  return true;
}

int load_or_fail(const std::string& path, std::optional<diskcond::ManifoldSpec>* spec) {
  std::string err;
  auto doc = read_json(path, &err);
  if (!doc) {
    std::cout << Json{{"error", err}}.dump(2) << "\n";
    return kExitInvalid;
  }
  auto res = diskcond::load_manifold(*doc);
  if (!res.ok()) {
    Json v = Json::array();
    for (const auto& viol : res.violations)
      v.push_back(Json{{"code", viol.code}, {"detail", viol.detail}});
    std::cout << Json{{"schema", "diskcond-violations/1"}, {"violations", v}}.dump(2) << "\n";
    return kExitInvalid;
  }
  *spec = std::move(*res.spec);
  return kExitOk;
}

long long default_node_limit() {
  if (const char* env = std::getenv("DISKCOND_NODE_LIMIT")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 200000;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"word-problem workbench for manifolds glued from three handlebodies"};
  app.require_subcommand(1);

  // example torus
  auto* cmd_example = app.add_subcommand("example", "emit a builder fixture");
  auto* cmd_torus = cmd_example->add_subcommand("torus", "three solid tori glued along annuli");
  std::vector<int> pvals;
  std::string out_path;
  cmd_torus->add_option("--p", pvals, "meridian crossing counts p1 p2 p3")
      ->expected(3)
      ->required();
  cmd_torus->add_option("-o,--output", out_path, "output file")->required();

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "check the disk-condition hypotheses");
  std::string verify_file;
  bool no_sysdisk = false;
  cmd_verify->add_option("file", verify_file, "manifold document")->required();
  cmd_verify->add_flag("--no-system-disk-check", no_sysdisk,
                       "skip the |∂D ∩ T| >= n check on system disks");

  // solve
  auto* cmd_solve = app.add_subcommand("solve", "decide whether a loop is null-homotopic");
  std::string solve_file, loop_file, trace_out;
  long long max_faces = -1, node_limit = default_node_limit();
  int threads = 1;
  bool do_audit = false;
  cmd_solve->add_option("file", solve_file, "manifold document")->required();
  cmd_solve->add_option("--loop", loop_file, "loop document")->required();
  cmd_solve->add_option("--max-faces", max_faces, "override the face-bound cap");
  cmd_solve->add_option("--node-limit", node_limit, "explored-node limit");
  cmd_solve->add_option("--threads", threads, "expansion threads");
  cmd_solve->add_option("--trace", trace_out, "write the trace document here");
  cmd_solve->add_flag("--audit", do_audit, "replay the trace and audit curvature");

  // h1
  auto* cmd_h1 = app.add_subcommand("h1", "first-homology oracle");
  std::string h1_file, h1_loop;
  cmd_h1->add_option("file", h1_file, "manifold document")->required();
  cmd_h1->add_option("--loop", h1_loop, "loop document to evaluate");

  // audit
  auto* cmd_audit = app.add_subcommand("audit", "replay a trace and audit curvature");
  std::string audit_file, dot_out;
  cmd_audit->add_option("trace", audit_file, "trace document (with embedded manifold)")
      ->required();
  cmd_audit->add_option("--dot", dot_out, "write the face-adjacency graph in DOT format");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (cmd_torus->parsed()) {
      diskcond::TorusExampleParams params{pvals[0], pvals[1], pvals[2]};
      Json doc = diskcond::build_torus_example(params);
      std::string err;
      if (!write_text(out_path, doc.dump(2) + "\n", &err)) {
        std::cerr << err << "\n";
        return kExitInvalid;
      }
      std::cout << Json{{"written", out_path}}.dump(2) << "\n";
      return kExitOk;
    }

    if (cmd_verify->parsed()) {
      std::optional<diskcond::ManifoldSpec> spec;
      int rc = load_or_fail(verify_file, &spec);
      if (rc != kExitOk) return rc;
      diskcond::WavelessOptions opt;
      opt.check_system_disks = !no_sysdisk;
      auto rep = diskcond::verify_manifold(*spec, opt);
      std::cout << rep.to_json(*spec).dump(2) << "\n";
      return rep.pass ? kExitOk : kExitInvalid;
    }

    if (cmd_solve->parsed()) {
      std::optional<diskcond::ManifoldSpec> spec;
      int rc = load_or_fail(solve_file, &spec);
      if (rc != kExitOk) return rc;
      auto vrep = diskcond::verify_manifold(*spec);
      if (!vrep.pass) {
        std::cout << vrep.to_json(*spec).dump(2) << "\n";
        return kExitInvalid;
      }
      std::string err;
      auto ldoc = read_json(loop_file, &err);
      if (!ldoc) {
        std::cout << Json{{"error", err}}.dump(2) << "\n";
        return kExitInvalid;
      }
      auto loop = diskcond::loop_from_json(*spec, *ldoc, &err);
      if (!loop) {
        std::cout << Json{{"error", err}}.dump(2) << "\n";
        return kExitInvalid;
      }
      diskcond::SolveOptions opt;
      if (max_faces >= 0) opt.max_faces = max_faces;
      opt.node_limit = node_limit;
      opt.threads = threads;
      diskcond::Verdict v;
      try {
        v = diskcond::solve(*spec, *loop, opt);
      } catch (const std::invalid_argument& e) {
        std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
        return kExitInvalid;
      }
      Json out = diskcond::verdict_json(*spec, v, true);
      if (do_audit && v.trace) {
        auto audit = diskcond::replay_and_audit(*spec, *v.trace);
        out["audit"] = audit.to_json(*spec);
      }
      std::cout << out.dump(2) << "\n";
      if (!trace_out.empty() && v.trace) {
        Json tj = diskcond::trace_json(*spec, *v.trace);
        tj["manifold"] = spec->serialize();
        if (!write_text(trace_out, tj.dump(2) + "\n", &err)) {
          std::cerr << err << "\n";
          return kExitInvalid;
        }
      }
      switch (v.kind) {
        case diskcond::VerdictKind::Trivial: return kExitOk;
        case diskcond::VerdictKind::Nontrivial: return kExitNontrivial;
        case diskcond::VerdictKind::ResourceLimit: return kExitResource;
      }
    }

    if (cmd_h1->parsed()) {
      std::optional<diskcond::ManifoldSpec> spec;
      int rc = load_or_fail(h1_file, &spec);
      if (rc != kExitOk) return rc;
      auto oracle = diskcond::h1_oracle(*spec);
      Json out = diskcond::h1_json(*spec, oracle);
      if (!h1_loop.empty()) {
        std::string err;
        auto ldoc = read_json(h1_loop, &err);
        if (!ldoc) {
          std::cout << Json{{"error", err}}.dump(2) << "\n";
          return kExitInvalid;
        }
        auto loop = diskcond::loop_from_json(*spec, *ldoc, &err);
        if (!loop) {
          std::cout << Json{{"error", err}}.dump(2) << "\n";
          return kExitInvalid;
        }
        auto cls = diskcond::h1_class(oracle, *loop);
        out["loop_class"] = cls.coords;
        out["loop_class_moduli"] = cls.moduli;
        out["loop_class_zero"] = cls.zero();
      }
      std::cout << out.dump(2) << "\n";
      return kExitOk;
    }

    if (cmd_audit->parsed()) {
      std::string err;
      auto tdoc = read_json(audit_file, &err);
      if (!tdoc) {
        std::cout << Json{{"error", err}}.dump(2) << "\n";
        return kExitInvalid;
      }
      if (!tdoc->contains("manifold")) {
        std::cout << Json{{"error", "trace document lacks an embedded manifold"}}.dump(2) << "\n";
        return kExitInvalid;
      }
      auto res = diskcond::load_manifold((*tdoc)["manifold"]);
      if (!res.ok()) {
        std::cout << Json{{"error", "embedded manifold invalid"}}.dump(2) << "\n";
        return kExitInvalid;
      }
      auto trace = diskcond::trace_from_json(*res.spec, *tdoc, &err);
      if (!trace) {
        std::cout << Json{{"error", err}}.dump(2) << "\n";
        return kExitInvalid;
      }
      auto audit = diskcond::replay_and_audit(*res.spec, *trace);
      std::cout << audit.to_json(*res.spec).dump(2) << "\n";
      if (!dot_out.empty() && audit.ok && !audit.vacuous) {
        if (!write_text(dot_out, audit.face_adjacency_dot(), &err)) {
          std::cerr << err << "\n";
          return kExitInvalid;
        }
      }
      return audit.ok ? kExitOk : kExitInvalid;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitUsage;
}
