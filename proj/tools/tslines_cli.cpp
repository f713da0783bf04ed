// tslines: command-line front end.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tslines/error.hpp"
#include "tslines/json_io.hpp"
#include "tslines/verify.hpp"

using namespace tslines;

namespace {

struct GridSpec {
  int rows = 40;
  int cols = 40;
};

GridSpec parse_grid(const std::string& s) {
  GridSpec g;
  char x = 0;
  std::istringstream in(s);
  if (!(in >> g.rows >> x >> g.cols) || (x != 'x' && x != 'X') || g.rows < 2 || g.cols < 2) {
    throw Error(ErrorCode::BadInput, "--grid expects NxM with N, M >= 2");
  }
  return g;
}

Json read_json(const std::string& path) {
  try {
    if (path == "-") return Json::parse(std::cin);
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::BadInput, "cannot open " + path);
    return Json::parse(f);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::BadInput, std::string("invalid JSON: ") + e.what());
  }
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::BadInput, "cannot write " + path);
  f << text;
}

void write_json(const Json& j, const std::string& path) { write_text(j.dump(2) + "\n", path); }

SupportFunction support_from_json(const Json& j) {
  return SupportFunction(field_from_json(j.is_object() && j.contains("support") ? j.at("support") : j));
}

/// {"support": field} builds F from r; otherwise {"section": rational}.
SectionGraph section_from_json(const Json& j, bool from_support) {
  if (from_support || j.contains("support")) return section_from_support(support_from_json(j));
  if (j.contains("section")) return {rational_from_json(j.at("section")), Provenance::Raw};
  return {rational_from_json(j), Provenance::Raw};
}

Json points_json(const std::vector<ComplexPointReport>& pts) {
  Json arr = Json::array();
  for (const auto& p : pts) arr.push_back(to_json(p));
  return arr;
}

Json matrix_json(const Eigen::Matrix4d& m) {
  Json rows = Json::array();
  for (int i = 0; i < 4; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2), m(i, 3)});
  return rows;
}

double r0_of(const Json& j, double fallback) {
  return j.contains("r0_squared") ? std::sqrt(j.at("r0_squared").get<double>()) : j.value("r0", fallback);
}

ParamSurface surface_from_params(const Json& j, Json& seams, std::optional<CertificationReport>& cert, double tol) {
  const std::string kind = j.value("kind", "c1");
  if (kind == "c1") {
    C1CrossCapParams p;
    if (j.contains("alpha")) p.alpha = complex_from_json(j.at("alpha"));
    p.c = j.value("c", p.c);
    p.r0 = r0_of(j, p.r0);
    p.eps = j.value("eps", p.eps);
    const ParamSurface s = build_c1_crosscap(p);
    seams.push_back(to_json(seam_report(s, 0, 2, kSeamTolerance)));
    cert = certify_c1_crosscap(p, j.value("radial_n", 512), j.value("angular_n", 512), tol);
    return s;
  }
  if (kind == "c2") {
    C2CrossCapParams p;
    p.r0 = r0_of(j, p.r0);
    p.inner_radius = j.value("inner_radius", 0.0);
    const ParamSurface s = build_c2_crosscap(p);
    for (std::size_t k = 0; k + 1 < s.pieces().size(); ++k) seams.push_back(to_json(seam_report(s, k, 3, 1e-9)));
    cert = certify_totally_real(s, j.value("radial_n", 256), j.value("angular_n", 256), tol);
    return s;
  }
  if (kind == "simple") {
    const ParamSurface s = simple_crosscap(j.value("r0", 0.5));
    cert = certify_totally_real(s, j.value("radial_n", 128), j.value("angular_n", 128), tol);
    return s;
  }
  throw Error(ErrorCode::BadInput, "unknown cross-cap kind '" + kind + "'");
}

std::string surface_samples_csv(const ParamSurface& s, int radial_n, int angular_n) {
  std::string out = "nu_re,nu_im,xi_re,xi_im,eta_re,eta_im,w_re,w_im\n";
  char buf[256];
  const double lo = s.inner_radius(), hi = s.outer_radius();
  for (int i = 0; i < radial_n; ++i) {
    const double rho = lo + (hi - lo) * (i + 0.5) / radial_n;
    for (int j = 0; j < angular_n; ++j) {
      const Complex nu = std::polar(rho, 2.0 * 3.14159265358979323846 * j / angular_n);
      Complex xi, eta, w;
      try {
        xi = s.xi(nu);
        eta = s.eta(nu);
        w = surface_defect(s, nu);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::OnSeam) throw;
        continue;
      }
      std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", nu.real(), nu.imag(),
                    xi.real(), xi.imag(), eta.real(), eta.imag(), w.real(), w.imag());
      out += buf;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real surfaces in the space of oriented lines"};
  app.require_subcommand(1);

  std::string input, out, format = "obj", grid = "40x40", csv;
  double disc = 0.9, tol = 1e-6;
  bool from_support = false;
  int k = 0, pairs = 1, grid_n = 64;
  std::uint64_t seed = kDefaultSeed;
  std::string xi_s = "0,0", eta_s = "0,0";
  std::vector<double> radii{0.5, 0.8, 1.0};
  double t_min = -1.0, t_max = 1.0;

  auto* section = app.add_subcommand("section", "Section of a support function: defect and complex points");
  section->add_option("input", input, "JSON {support} or {section}")->required();
  section->add_option("--disc", disc, "Search disc radius");
  section->add_option("--out", out, "Output path");

  auto* cpoints = app.add_subcommand("cpoints", "Locate and classify complex points of a section");
  cpoints->add_option("input", input, "JSON section field")->required();
  cpoints->add_flag("--from-support", from_support, "Input is a support function");
  cpoints->add_option("--disc", disc, "Search disc radius");
  cpoints->add_option("--grid", grid_n, "Zero search grid size");
  cpoints->add_option("--out", out, "Output path");

  auto* blowup = app.add_subcommand("blowup", "Cross-cap seams and total-reality certificate");
  blowup->add_option("input", input, "JSON params {kind: c1|c2|simple, ...}")->required();
  blowup->add_option("--tol", tol, "Minimum |W| for certification");
  blowup->add_option("--csv", csv, "Write nu, xi, eta, W samples");
  blowup->add_option("--out", out, "Output path");

  auto* recon = app.add_subcommand("reconstruct", "Surface orthogonal to a support function's lines");
  recon->add_option("input", input, "JSON {support, C}")->required();
  recon->add_option("--grid", grid, "Radial x angular samples, NxM");
  recon->add_option("--disc", disc, "Chart disc radius");
  recon->add_option("--format", format, "obj or csv")->check(CLI::IsMember({"obj", "csv"}));
  recon->add_option("--out", out, "Output path");

  auto* ruled = app.add_subcommand("ruled", "Ruled surfaces swept by cross-cap lines over |nu| = R");
  ruled->add_option("input", input, "JSON cross-cap params")->required();
  ruled->add_option("--radii", radii, "Radii of the rulings");
  ruled->add_option("--t-min", t_min, "Line parameter start");
  ruled->add_option("--t-max", t_max, "Line parameter end");
  ruled->add_option("--grid", grid, "Angular x line samples, NxM");
  ruled->add_option("--format", format, "obj or csv")->check(CLI::IsMember({"obj", "csv"}));
  ruled->add_option("--out", out, "Output prefix, one file per radius")->required();

  auto* ledger = app.add_subcommand("ledger", "Index arithmetic for the blow-up scenario");
  ledger->add_option("--k", k, "Excess index k >= 0")->required()->check(CLI::NonNegativeNumber);
  ledger->add_option("--pairs", pairs, "Elliptic/hyperbolic pairs before cancellation");
  ledger->add_option("--out", out, "Output path");

  auto* probe = app.add_subcommand("tensor-probe", "Symplectic form and metric at a line");
  probe->add_option("--xi", xi_s, "re,im");
  probe->add_option("--eta", eta_s, "re,im");
  probe->add_option("--out", out, "Output path");

  auto* verify = app.add_subcommand("verify-paper", "Re-run every reproducible check");
  verify->add_option("--seed", seed, "Seed for randomized checks");
  verify->add_option("--out", out, "Output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  auto parse_complex = [](const std::string& s) {
    double re = 0.0, im = 0.0;
    char comma = 0;
    std::istringstream in(s);
    if (!(in >> re)) throw Error(ErrorCode::BadInput, "expected re,im");
    if (in >> comma && !(comma == ',' && in >> im)) throw Error(ErrorCode::BadInput, "expected re,im");
    return Complex{re, im};
  };

  try {
    if (*section) {
      const Json j = read_json(input);
      const SectionGraph F = section_from_json(j, false);
      Json rep{{"section", to_json(F.F)},
               {"max_lagrangian_defect", max_lagrangian_defect(F, disc)},
               {"complex_points", points_json(find_complex_points(F, {0.0, disc}))},
               {"boundary_index", boundary_index(F, {0.0, disc})}};
      if (j.contains("support")) {
        const SupportFunction r = support_from_json(j);
        rep["boundary_winding"] = boundary_winding(r, Loop(0.0, disc));
      }
      write_json(rep, out);
    } else if (*cpoints) {
      const SectionGraph F = section_from_json(read_json(input), from_support);
      write_json({{"complex_points", points_json(find_complex_points(F, {0.0, disc}, grid_n))},
                  {"boundary_index", boundary_index(F, {0.0, disc})}},
                 out);
    } else if (*blowup) {
      const Json j = read_json(input);
      Json seams = Json::array();
      std::optional<CertificationReport> cert;
      const ParamSurface s = surface_from_params(j, seams, cert, tol);
      Json rep{{"kind", j.value("kind", "c1")}, {"seams", seams}, {"certification", to_json(*cert)}};
      if (j.value("kind", "c1") == "c1") {
        C1CrossCapParams p;
        p.c = j.value("c", p.c);
        const Poly2 g = derive_reality_polynomial(p).g;
        rep["reality_polynomial"] = to_json(g);
        rep["critical_point"] = to_json(g_critical_report(g, p.c));
      } else if (j.value("kind", "c1") == "c2") {
        rep["constants"] = to_json(c2_constants(r0_of(j, C2CrossCapParams{}.r0)));
      } else {
        rep["antipodal_gap"] = antipodal_gap(s);
      }
      if (!csv.empty()) write_text(surface_samples_csv(s, 64, 128), csv);
      write_json(rep, out);
      return cert->pass ? 0 : 1;
    } else if (*recon) {
      const Json j = read_json(input);
      const SupportFunction r = support_from_json(j);
      const GridSpec g = parse_grid(grid);
      const MeshR3 mesh =
          reconstruct_surface(section_from_support(r), r, j.value("C", 0.0), {disc, g.rows, g.cols, 0.0});
      write_text(format == "csv" ? export_csv(mesh) : export_obj(mesh), out);
    } else if (*ruled) {
      Json seams = Json::array();
      std::optional<CertificationReport> cert;
      const ParamSurface s = surface_from_params(read_json(input), seams, cert, tol);
      const GridSpec g = parse_grid(grid);
      const auto meshes = ruled_family(s, radii, t_min, t_max, g.rows, g.cols);
      for (std::size_t i = 0; i < meshes.size(); ++i) {
        const std::string path = out + "_" + std::to_string(i) + "." + format;
        write_text(format == "csv" ? export_csv(meshes[i]) : export_obj(meshes[i]), path);
        std::cout << path << "\n";
      }
    } else if (*ledger) {
      write_json(to_json(reformulation_scenario(k, pairs)), out);
    } else if (*probe) {
      const OrientedLine at{parse_complex(xi_s), parse_complex(eta_s)};
      const Signature sig = metric_signature(at);
      const LineVectors lv = line_to_vectors(at);
      write_json({{"xi", to_json(at.xi)},
                  {"eta", to_json(at.eta)},
                  {"U", {lv.U.x(), lv.U.y(), lv.U.z()}},
                  {"V", {lv.V.x(), lv.V.y(), lv.V.z()}},
                  {"omega", matrix_json(omega_matrix(at))},
                  {"metric", matrix_json(metric_matrix(at))},
                  {"signature", {{"positive", sig.positive}, {"negative", sig.negative}, {"null", sig.null}}}},
                 out);
    } else if (*verify) {
      const VerifyReport rep = verify_paper(seed);
      write_json(rep.to_json(), out);
      return rep.exit_code();
    }
  } catch (const Error& e) {
    std::cerr << "tslines: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "tslines: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
