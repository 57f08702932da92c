// Command-line front end: invariant evaluation on diagram files, the Hopf and
// Whitehead closed forms, and the reference-table sweep.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gkn/invariants.hpp"
#include "gkn/universal.hpp"

using namespace gkn;

namespace {

Color parse_color(const std::string& spec) {
  auto starts = [&](const char* p) { return spec.rfind(p, 0) == 0; };
  if (spec == "phi") return Color::phi();
  if (spec == "phiso3") return Color::phi_so3();
  if (spec == "T0") return Color::T0();
  if (spec == "TN") return Color::TN();
  if (starts("T+")) return Color::Ts(std::stoi(spec.substr(2)), +1);
  if (starts("T-")) return Color::Ts(std::stoi(spec.substr(2)), -1);
  if (starts("G")) return Color::Gs(std::stoi(spec.substr(1)));
  if (starts("weight:")) {
    std::string body = spec.substr(7);
    double re = 0, im = 0;
    size_t pos = 0;
    re = std::stod(body, &pos);
    if (pos < body.size()) {
      std::string rest = body.substr(pos);
      if (!rest.empty() && rest.back() == 'i') rest.pop_back();
      if (!rest.empty()) im = std::stod(rest);
    }
    return Color::weight(cplx(re, im));
  }
  throw std::invalid_argument("unknown color '" + spec +
                              "' (use weight:<re>[+<im>i], T+<s>, T-<s>, G<s>, T0, TN, phi, "
                              "phiso3)");
}

int run_check() {
  int bad = 0;
  auto expect = [&](bool ok, const char* what) {
    printf("%-60s %s\n", what, ok ? "ok" : "FAIL");
    if (!ok) ++bad;
  };
  for (int N : {3, 5}) {
    RootContext ctx(N);
    Algebra alg(ctx);
    SymmetricFunctions sf(ctx);
    Invariants inv(ctx);
    double worst = 0.0;
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        for (int c = 0; c < 2 * N; ++c) {
          AlgebraElement x = AlgebraElement::monomial(ctx, a, b, c);
          worst = std::max(worst,
                           std::abs(sf.value(SymmetricFunctionTag::Phi(), x) - alg.phi(x)));
          AlgebraElement conv = alg.mu_convolve(x);
          worst = std::max(
              worst, (conv - AlgebraElement::unit(ctx) * alg.right_integral(x)).norm1());
        }
    expect(worst < 1e-9, ("algebra and trace decomposition, N = " + std::to_string(N)).c_str());
    for (int sign : {+1, -1}) {
      worst = std::abs(inv.psi_phi_unknot(sign) - inv.psi_phi_unknot_engine(sign));
      expect(worst < 1e-9,
             ("unknot normalization vs engine, N = " + std::to_string(N)).c_str());
    }
  }
  {
    RootContext ctx(5);
    Invariants inv(ctx);
    SurgeryPresentation p(Tangle::parse(figure_eight_text()), {});
    double kashaev = 0.0, prod = 1.0;
    for (int k = 0; k <= 4; ++k) {
      if (k > 0) {
        double s = 2.0 * std::sin(pi * k / 5.0);
        prod *= s * s;
      }
      kashaev += prod;
    }
    expect(std::abs(inv.gk(p).value - kashaev) < 1e-8, "figure-eight Kashaev value, N = 5");
    VolumeRatio r = whitehead_volume_ratio(-4, 83);
    expect(std::abs(r.value - cplx(3.40671, -0.97724)) < 5e-5,
           "Whitehead volume ratio, f = -4, N = 83");
  }
  printf(bad ? "check: %d failures\n" : "check: all good\n", bad);
  return bad ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Kashaev invariants of knots in surgery-presented 3-manifolds"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "run the built-in invariant checks");

  auto* invariant = app.add_subcommand("invariant", "evaluate a colored diagram");
  std::string dsl_file, colors_spec;
  int cut_override = 0;
  int inv_N = 5;
  invariant->add_option("--dsl", dsl_file, "diagram file in the braid/slice DSL")->required();
  invariant->add_option("--colors", colors_spec,
                        "comma list, one color per component (weight:<c>, T+<s>, T-<s>, G<s>, "
                        "T0, TN, phi, phiso3)")
      ->required();
  invariant->add_option("--cut", cut_override, "cut this component instead of the declared one");
  invariant->add_option("--N", inv_N, "order of the root of unity (default 5)");

  auto* hopf = app.add_subcommand("hopf", "closed-form SO(3) invariant of the Hopf family");
  long long hopf_f = 0;
  int hopf_N = 5;
  hopf->add_option("--f", hopf_f, "surgery framing")->required();
  hopf->add_option("--N", hopf_N, "odd order")->required();

  auto* wh = app.add_subcommand("whitehead", "closed-form SO(3) invariant of the Whitehead family");
  long long wh_f = 0;
  int wh_N = 5;
  bool wh_ratio = false;
  wh->add_option("--f", wh_f, "surgery framing")->required();
  wh->add_option("--N", wh_N, "odd order")->required();
  wh->add_flag("--ratio", wh_ratio, "print the volume log-ratio against N-2");

  auto* table = app.add_subcommand("table", "sweep the Whitehead volume ratios");
  long long f_min = -5, f_max = 10;
  std::string n_list = "83,123,183,245", out_csv, gnuplot_file;
  table->add_option("--f-min", f_min, "lowest framing");
  table->add_option("--f-max", f_max, "highest framing");
  table->add_option("--N", n_list, "comma list of odd orders");
  table->add_option("--out", out_csv, "CSV output path");
  table->add_option("--gnuplot", gnuplot_file, "emit a gnuplot script next to the CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return run_check();

    if (*invariant) {
      std::ifstream in(dsl_file);
      if (!in) {
        std::cerr << "cannot open " << dsl_file << "\n";
        return 2;
      }
      std::stringstream ss;
      ss << in.rdbuf();
      TangleDiagram d;
      try {
        d = Tangle::parse(ss.str());
        if (cut_override > 0) {
          if (!d.braid_src) throw std::runtime_error("--cut needs a braid-form diagram");
          BraidSource bs = *d.braid_src;
          bs.close_all = false;
          bs.except_comp = cut_override;
          auto framings = d.framings;
          d = Tangle::from_braid(bs);
          d.framings = framings;
        }
      } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
      }
      std::vector<Color> colors;
      std::stringstream cs(colors_spec);
      std::string item;
      while (std::getline(cs, item, ',')) colors.push_back(parse_color(item));
      if (static_cast<int>(colors.size()) != d.n_components) {
        std::cerr << "diagram has " << d.n_components << " components, got " << colors.size()
                  << " colors\n";
        return 2;
      }
      RootContext ctx(inv_N);
      Evaluator<cplx> ev(ctx);
      cplx v = ev.evaluate(d, colors);
      printf("%.12g%+.12gi\n", v.real(), v.imag());
      return 0;
    }

    if (*hopf) {
      RootContext ctx(hopf_N);
      GKValue v = hopf_gk_so3(ctx, hopf_f);
      printf("GK^{SO(3)}(Hopf, f=%lld, N=%d) = %.12g%+.12gi%s\n", hopf_f, hopf_N,
             v.value.real(), v.value.imag(), v.exact_zero() ? "  (exact zero)" : "");
      return 0;
    }

    if (*wh) {
      cplx g = whitehead_gk_so3_hp(wh_N, wh_f);
      printf("GK~^{SO(3)}(Whitehead, f=%lld, N=%d) = %.12g%+.12gi\n", wh_f, wh_N, g.real(),
             g.imag());
      if (wh_ratio) {
        VolumeRatio r = whitehead_volume_ratio(wh_f, wh_N);
        printf("pi log ratio vs N-2: %.12g%+.12gi", r.value.real(), r.value.imag());
        if (r.has_reference)
          printf("   census %.5f%+.5fi, distance mod i pi^2/2: %.3g", r.reference.real(),
                 r.reference.imag(), r.ref_distance);
        printf("\n");
      }
      return 0;
    }

    if (*table) {
      std::vector<int> Ns;
      std::stringstream ns(n_list);
      std::string item;
      while (std::getline(ns, item, ',')) Ns.push_back(std::stoi(item));
      auto rows = reproduce_table(f_min, f_max, Ns);
      std::ostream* out = &std::cout;
      std::ofstream file;
      if (!out_csv.empty()) {
        file.open(out_csv);
        if (!file) {
          std::cerr << "cannot write " << out_csv << "\n";
          return 2;
        }
        out = &file;
      }
      (*out) << "f,N,re,im,ref_re,ref_im,abs_err\n";
      int flagged = 0;
      for (const auto& r : rows) {
        char buf[256];
        if (r.has_reference)
          snprintf(buf, sizeof buf, "%lld,%d,%.12g,%.12g,%.12g,%.12g,%.3g\n", r.f, r.N,
                   r.value.real(), r.value.imag(), r.reference.real(), r.reference.imag(),
                   r.abs_err);
        else
          snprintf(buf, sizeof buf, "%lld,%d,%.12g,%.12g,,,\n", r.f, r.N, r.value.real(),
                   r.value.imag());
        (*out) << buf;
        if (r.checked && r.abs_err > 5e-5) ++flagged;
      }
      fprintf(stderr, "%zu rows; %d checked rows beyond tolerance\n", rows.size(), flagged);
      if (!gnuplot_file.empty()) {
        std::ofstream g(gnuplot_file);
        g << "set datafile separator ','\n"
          << "set key outside\n"
          << "set xlabel 'N'\nset ylabel 'pi log ratio'\n"
          << "plot '" << (out_csv.empty() ? std::string("table.csv") : out_csv)
          << "' using 2:($3) with linespoints title 're', '' using 2:($4) with linespoints "
             "title 'im'\n";
      }
      return flagged == 0 ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
