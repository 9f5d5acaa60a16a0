// Command-line front end: form generation, coefficient-level Hecke action,
// eigenvalue extraction, and exact identity verification on stored
// expansions.

#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "siegel/cache.hpp"
#include "siegel/generators.hpp"
#include "siegel/hecke.hpp"
#include "siegel/lattice_ops.hpp"
#include "siegel/relations.hpp"

namespace {

using namespace siegel;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfBound:
    case ErrorCode::BoundTooSmall:
    case ErrorCode::NotEigenform:
    case ErrorCode::AllCoefficientsZero:
      return 3;
    default:
      return 2;
  }
}

void emit_error(const std::string& name, const std::string& what) {
  nlohmann::ordered_json j;
  j["error"] = name;
  j["message"] = what;
  std::cerr << j.dump() << std::endl;
}

MatZ read_gram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::InvalidInput, "cannot open gram file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    raise(ErrorCode::InvalidInput, std::string("bad gram JSON: ") + e.what());
  }
  MatZ g;
  for (const auto& row : j) {
    VecZ r;
    for (const auto& v : row) r.emplace_back(static_cast<long>(v.get<long long>()));
    g.push_back(std::move(r));
  }
  return g;
}

void write_text_atomic(const std::string& path, const std::string& text) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorCode::InvalidInput, "cannot open " + tmp);
    out << text << '\n';
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    raise(ErrorCode::InvalidInput, "cannot rename " + tmp);
}

FourierExpansion generate_cached(const std::string& description,
                                 const std::function<FourierExpansion()>& generate) {
  const char* dir = std::getenv("SIEGEL_CACHE_DIR");
  if (!dir || !*dir) return generate();
  std::string key = cache_key(description);
  try {
    if (auto hit = cache_load(dir, key)) return *hit;
  } catch (const SiegelError& e) {
    if (e.code() != ErrorCode::ChecksumMismatch) throw;
    // fall through and regenerate
  }
  FourierExpansion f = generate();
  cache_store(dir, key, f);
  return f;
}

struct VerifyArgs {
  std::string identity;
  std::string in_path;
  std::string report_path;
  Int p = 0, m = 1, n = 1, p0 = 0;
  int r = 1;
};

RelationReport run_verify(const VerifyArgs& a) {
  FourierExpansion f = read_expansion(a.in_path);
  EigenformContext ctx(f);
  if (a.identity == "thm11a") return verify_thm11a(ctx, a.p, a.m);
  if (a.identity == "thm11b") return verify_thm11b(ctx, a.p, a.r, a.m);
  if (a.identity == "thm11c") return verify_thm11c(ctx, a.m, a.n);
  if (a.identity == "prop32") return verify_prop32(ctx, a.p, a.m, a.r);
  if (a.identity == "prop33") return verify_prop33(ctx, a.p, a.r, a.m);
  if (a.identity == "thm12") return verify_thm12(ctx, a.p0, a.m, a.n);
  raise(ErrorCode::InvalidInput, "unknown identity " + a.identity);
}

HeckeOutcome run_operator(const FourierExpansion& f, const std::string& op, Int p) {
  if (op == "tp") return apply_T_p(f, p);
  if (op == "t1tilde") return apply_T1tilde_p2(f, p);
  if (op == "t1") return apply_T1_p2(f, p);
  if (op == "t2level") return apply_T2_p2_level(f, p);
  raise(ErrorCode::InvalidInput, "unknown operator " + op);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact coefficient engine for degree-2 Siegel form expansions"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker thread count (0 = library default)");

  // theta
  auto* theta = app.add_subcommand("theta", "degree-2 theta series of an even lattice");
  std::string theta_gram, theta_builtin, theta_out;
  Int theta_bound = 4;
  theta->add_option("--gram", theta_gram, "JSON integer Gram matrix file");
  theta->add_option("--builtin", theta_builtin, "builtin lattice: e8 or 2i8");
  theta->add_option("--bound", theta_bound, "class bound B")->required();
  theta->add_option("--out", theta_out, "output expansion path")->required();

  // igusa-chi10
  auto* igusa = app.add_subcommand("igusa-chi10", "weight-10 cusp form from theta constants");
  Int igusa_bound = 10;
  std::string igusa_out;
  igusa->add_option("--bound", igusa_bound, "class bound B")->required();
  igusa->add_option("--out", igusa_out, "output expansion path")->required();

  // hecke
  auto* hecke = app.add_subcommand("hecke", "apply a coefficient-level Hecke operator");
  std::string hecke_op, hecke_in, hecke_out;
  Int hecke_p = 2;
  hecke->add_option("--op", hecke_op, "tp | t1tilde | t1 | t2level")->required();
  hecke->add_option("--p", hecke_p, "prime")->required();
  hecke->add_option("--in", hecke_in, "input expansion")->required();
  hecke->add_option("--out", hecke_out, "output expansion")->required();

  // eigen
  auto* eigen = app.add_subcommand("eigen", "extract an eigenvalue");
  std::string eigen_op, eigen_in;
  Int eigen_p = 2;
  eigen->add_option("--op", eigen_op, "tp | t1tilde | t1 | t2level")->required();
  eigen->add_option("--p", eigen_p, "prime")->required();
  eigen->add_option("--in", eigen_in, "input expansion")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "verify a coefficient identity exactly");
  VerifyArgs vargs;
  verify->add_option("--identity", vargs.identity, "thm11a|thm11b|thm11c|prop32|prop33|thm12")->required();
  verify->add_option("--in", vargs.in_path, "input expansion")->required();
  verify->add_option("--p", vargs.p, "prime p");
  verify->add_option("--r", vargs.r, "prime-power exponent r");
  verify->add_option("--m", vargs.m, "scaling m");
  verify->add_option("--n", vargs.n, "scaling n");
  verify->add_option("--p0", vargs.p0, "odd prime of the diag base");
  verify->add_option("--report", vargs.report_path, "report JSON path");

  // reduce
  auto* red = app.add_subcommand("reduce", "canonical class representative");
  std::vector<Int> red_triple;
  bool red_proper = false;
  red->add_option("triple", red_triple, "a b c")->expected(3);
  red->add_flag("--proper", red_proper, "determinant-one reduction");

  // sublattices
  auto* subl = app.add_subcommand("sublattices", "index-p sublattice family");
  std::vector<Int> subl_triple;
  Int subl_p = 2;
  subl->add_option("triple", subl_triple, "a b c")->expected(3);
  subl->add_option("--p", subl_p, "prime")->required();

  // alpha
  auto* alph = app.add_subcommand("alpha", "isotropic line count mod p");
  std::vector<Int> alpha_triple;
  Int alpha_p = 2;
  alph->add_option("triple", alpha_triple, "a b c")->expected(3);
  alph->add_option("--p", alpha_p, "prime")->required();

  // eta-kappa
  auto* ek = app.add_subcommand("eta-kappa", "eta/kappa recursion table of an eigenform");
  std::string ek_in, ek_base = "2i";
  Int ek_p = 2, ek_p0 = 0;
  int ek_r = 4;
  ek->add_option("--p", ek_p, "prime")->required();
  ek->add_option("--r", ek_r, "table depth");
  ek->add_option("--in", ek_in, "input expansion")->required();
  ek->add_option("--base", ek_base, "2i | diag");
  ek->add_option("--p0", ek_p0, "odd prime for the diag base");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (threads > 0) omp_set_num_threads(threads);

    if (theta->parsed()) {
      if (theta_builtin.empty() == theta_gram.empty())
        raise(ErrorCode::InvalidInput, "need exactly one of --builtin and --gram");
      EvenLattice l;
      std::string tag;
      if (!theta_builtin.empty()) {
        if (theta_builtin == "e8")
          l = e8_lattice();
        else if (theta_builtin == "2i8")
          l = scaled_identity_lattice(8, 2);
        else
          raise(ErrorCode::InvalidInput, "unknown builtin " + theta_builtin);
        tag = "builtin:" + theta_builtin;
      } else {
        l = make_even_lattice(read_gram_file(theta_gram));
        std::string flat;
        for (const auto& row : l.gram)
          for (const auto& v : row) flat += v.get_str() + ",";
        tag = "gram:" + flat;
      }
      FourierExpansion f = generate_cached(
          "theta|" + tag + "|bound" + std::to_string(theta_bound),
          [&] { return theta_series(l, theta_bound); });
      write_expansion(theta_out, f);
      return 0;
    }

    if (igusa->parsed()) {
      FourierExpansion f = generate_cached("igusa-chi10|bound" + std::to_string(igusa_bound),
                                           [&] { return igusa_chi10(igusa_bound); });
      write_expansion(igusa_out, f);
      return 0;
    }

    if (hecke->parsed()) {
      FourierExpansion f = read_expansion(hecke_in);
      HeckeOutcome outcome = run_operator(f, hecke_op, hecke_p);
      write_expansion(hecke_out, outcome.out);
      return 0;
    }

    if (eigen->parsed()) {
      FourierExpansion f = read_expansion(eigen_in);
      HeckeOutcome outcome = run_operator(f, eigen_op, eigen_p);
      std::optional<BigRat> rho = extract_eigenvalue(f, outcome);
      if (!rho) {
        std::cout << "NOT_EIGEN" << std::endl;
        return 3;
      }
      std::cout << rho->get_str() << std::endl;
      return 0;
    }

    if (verify->parsed()) {
      RelationReport report = run_verify(vargs);
      if (!vargs.report_path.empty()) write_text_atomic(vargs.report_path, report_to_json(report));
      std::cout << report.identity << (report.pass() ? " PASS" : " FAIL") << std::endl;
      return report.pass() ? 0 : 1;
    }

    if (red->parsed()) {
      Reduction r = reduce(BinQF{red_triple[0], red_triple[1], red_triple[2]}, red_proper);
      std::cout << r.canonical.a << " " << r.canonical.b << " " << r.canonical.c << "\n";
      std::cout << "transform " << r.g.m[0][0] << " " << r.g.m[0][1] << " " << r.g.m[1][0] << " "
                << r.g.m[1][1] << std::endl;
      return 0;
    }

    if (subl->parsed()) {
      BinQF t{subl_triple[0], subl_triple[1], subl_triple[2]};
      for (const SublatticeStep& s : sublattices_1_p(t, subl_p)) {
        if (s.tag == SublatticeStep::kInfinityTag)
          std::cout << "u=inf";
        else
          std::cout << "u=" << s.tag;
        std::cout << " basis " << s.basis.m[0][0] << " " << s.basis.m[0][1] << " " << s.basis.m[1][0]
                  << " " << s.basis.m[1][1] << " child " << s.child.a << " " << s.child.b << " "
                  << s.child.c << "\n";
      }
      return 0;
    }

    if (alph->parsed()) {
      std::cout << alpha(BinQF{alpha_triple[0], alpha_triple[1], alpha_triple[2]}, alpha_p) << std::endl;
      return 0;
    }

    if (ek->parsed()) {
      FourierExpansion f = read_expansion(ek_in);
      EigenformContext ctx(f);
      EtaBase base;
      if (ek_base == "2i")
        base = EtaBase::TwoI;
      else if (ek_base == "diag")
        base = EtaBase::DiagOneP0;
      else
        raise(ErrorCode::InvalidInput, "unknown base " + ek_base);
      EtaKappaTable table = ctx.eta_kappa(ek_p, ek_r, base, ek_p0);
      for (int r = 0; r <= ek_r; ++r)
        std::cout << r << " " << table.eta[static_cast<size_t>(r)].get_str() << " "
                  << table.kappa[static_cast<size_t>(r)].get_str() << "\n";
      return 0;
    }

    raise(ErrorCode::InvalidInput, "no subcommand");
  } catch (const SiegelError& e) {
    emit_error(error_name(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    emit_error("Unhandled", e.what());
    return 2;
  }
}
