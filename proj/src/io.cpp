#include "qps/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qps {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open for writing: " + path);
  return os;
}

json grid_to_json(const PhaseGrid& g) {
  return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"p_min", g.p_min},
          {"p_max", g.p_max}, {"nx", g.nx},       {"np", g.np},
          {"hbar", g.hbar}};
}

}  // namespace

void write_field_csv(const ScalarField& field, const std::string& path) {
  std::ofstream os = open_out(path);
  os << "x,p,value\n";
  for (int j = 0; j < field.grid.nx; ++j) {
    const std::string xs = fmt(field.grid.x(j));
    for (int k = 0; k < field.grid.np; ++k) {
      os << xs << ',' << fmt(field.grid.p(k)) << ',' << fmt(field.at(j, k)) << '\n';
    }
  }
  if (!os) throw io_error("write failed: " + path);
}

std::string field_manifest_json(const ScalarField& field, const SmoothingKernel* kernel) {
  json j{{"grid", grid_to_json(field.grid)},
         {"kind", to_string(field.kind)},
         {"stats",
          {{"min", field.min_value()}, {"max", field.max_value()}, {"mass", field.mass()}}}};
  if (kernel) {
    j["kernel"] = {{"sx", kernel->sx}, {"sp", kernel->sp}, {"measure", kernel->measure()}};
  }
  return j.dump(2);
}

void write_field_ppm(const ScalarField& field, const std::string& path) {
  std::ofstream os = open_out(path);
  const int W = field.grid.nx, H = field.grid.np;
  os << "P6\n" << W << " " << H << "\n255\n";
  const double vmax =
      std::max({std::abs(field.min_value()), std::abs(field.max_value()), 1e-300});
  // white at zero; positive toward red, negative toward blue
  for (int row = 0; row < H; ++row) {
    const int k = H - 1 - row;  // top row = p_max
    for (int j = 0; j < W; ++j) {
      const double t = std::clamp(field.at(j, k) / vmax, -1.0, 1.0);
      unsigned char rgb[3];
      if (t >= 0) {
        rgb[0] = static_cast<unsigned char>(255 - 77 * t);
        rgb[1] = static_cast<unsigned char>(255 - 231 * t);
        rgb[2] = static_cast<unsigned char>(255 - 212 * t);
      } else {
        rgb[0] = static_cast<unsigned char>(255 + 222 * t);
        rgb[1] = static_cast<unsigned char>(255 + 153 * t);
        rgb[2] = static_cast<unsigned char>(255 + 83 * t);
      }
      os.write(reinterpret_cast<const char*>(rgb), 3);
    }
  }
  if (!os) throw io_error("write failed: " + path);
}

std::string density_to_json(const FockDensityMatrix& rho) {
  json re = json::array(), im = json::array();
  for (int m = 0; m < rho.dim; ++m) {
    json rrow = json::array(), irow = json::array();
    for (int n = 0; n < rho.dim; ++n) {
      rrow.push_back(rho.entries(m, n).real());
      irow.push_back(rho.entries(m, n).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return json{{"dim", rho.dim},
              {"hbar", rho.hbar},
              {"tail_weight", rho.tail_weight},
              {"re", std::move(re)},
              {"im", std::move(im)}}
      .dump();
}

FockDensityMatrix density_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw io_error(std::string("density JSON parse error: ") + e.what());
  }
  FockDensityMatrix rho;
  try {
    rho.dim = j.at("dim").get<int>();
    rho.hbar = j.at("hbar").get<double>();
    rho.tail_weight = j.value("tail_weight", 0.0);
    rho.entries = Matrix(rho.dim, rho.dim);
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    for (int m = 0; m < rho.dim; ++m)
      for (int n = 0; n < rho.dim; ++n)
        rho.entries(m, n) = complex(re.at(m).at(n).get<double>(),
                                    im.at(m).at(n).get<double>());
  } catch (const json::exception& e) {
    throw io_error(std::string("density JSON schema error: ") + e.what());
  }
  return rho;
}

void write_density_json(const FockDensityMatrix& rho, const std::string& path) {
  write_text_file(path, density_to_json(rho));
}

FockDensityMatrix read_density_json(const std::string& path) {
  return density_from_json(read_text_file(path));
}

std::string partition_to_json(const CellPartition& part) {
  json cells = json::array();
  for (const Cell& c : part.cells)
    cells.push_back({{"id", c.id}, {"x_lo", c.x_lo}, {"x_hi", c.x_hi},
                     {"p_lo", c.p_lo}, {"p_hi", c.p_hi}});
  return json{{"coverage",
               {{"x_lo", part.coverage.x_lo}, {"x_hi", part.coverage.x_hi},
                {"p_lo", part.coverage.p_lo}, {"p_hi", part.coverage.p_hi}}},
              {"cells", std::move(cells)}}
      .dump(2);
}

CellPartition partition_from_json(const std::string& text, double hbar) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw io_error(std::string("partition JSON parse error: ") + e.what());
  }
  CellPartition part;
  try {
    const auto& cov = j.at("coverage");
    part.coverage = {cov.at("x_lo"), cov.at("x_hi"), cov.at("p_lo"), cov.at("p_hi"),
                     "coverage"};
    for (const auto& jc : j.at("cells")) {
      part.cells.push_back({jc.at("x_lo"), jc.at("x_hi"), jc.at("p_lo"), jc.at("p_hi"),
                            jc.at("id").get<std::string>()});
    }
  } catch (const json::exception& e) {
    throw io_error(std::string("partition JSON schema error: ") + e.what());
  }
  part.validate(hbar);
  return part;
}

void write_partition_json(const CellPartition& part, const std::string& path) {
  write_text_file(path, partition_to_json(part));
}

CellPartition read_partition_json(const std::string& path, double hbar) {
  return partition_from_json(read_text_file(path), hbar);
}

void write_probabilities_csv(const PartitionProbabilities& probs,
                             const std::string& path) {
  std::ofstream os = open_out(path);
  os << "id,P,err_bound,negative\n";
  for (const CellProbability& p : probs.items)
    os << p.id << ',' << fmt(p.value) << ',' << fmt(p.err_bound) << ','
       << (p.negative ? 1 : 0) << '\n';
  if (!os) throw io_error("write failed: " + path);
}

void write_readout_csv(const DetectorReadout& readout, const std::string& path) {
  std::ofstream os = open_out(path);
  os << "k,p_k,P_k\n";
  for (const ReadoutRow& r : readout.rows)
    os << r.k << ',' << fmt(r.p_k) << ',' << fmt(r.P_k) << '\n';
  if (!os) throw io_error("write failed: " + path);
}

std::string readout_summary_json(const DetectorReadout& readout,
                                 const DetectorSpec& spec) {
  return json{{"plate_L", spec.L},
              {"plate_x0", spec.x0},
              {"mode_spacing", readout.dp_mode},
              {"sigma_x", readout.uncertainties.sigma_x},
              {"sigma_k", readout.uncertainties.sigma_k},
              {"sigma_p", readout.uncertainties.sigma_p},
              {"uncertainty_product", readout.uncertainties.product},
              {"captured_mass", readout.captured_mass},
              {"escaped_mass", readout.escaped_mass},
              {"total_mass", readout.total_mass},
              {"modes", readout.rows.size()}}
      .dump(2);
}

std::string report_to_json(const NonclassicalityReport& rep, const PhysicsConfig& cfg) {
  json j{{"units", {{"hbar", cfg.hbar}, {"sigma", cfg.sigma}}},
         {"sigma_x_state", rep.sigma_x_state},
         {"sigma_p_state", rep.sigma_p_state},
         {"mean_x", rep.mean_x},
         {"mean_p", rep.mean_p},
         {"sigma_opt", rep.sigma_opt},
         {"n_bar_min", rep.n_bar_min},
         {"negativity_min", rep.negativity_min},
         {"negativity_volume", rep.negativity_volume},
         {"classical", rep.classical}};
  if (rep.psi0_sq) j["psi0_sq"] = *rep.psi0_sq;
  if (rep.distance_sq) j["distance_sq"] = *rep.distance_sq;
  return j.dump(2);
}

void write_weyl_csv(const std::vector<WeylPoint>& pts, const std::string& path) {
  std::ofstream os = open_out(path);
  os << "P,Q,re,im\n";
  for (const WeylPoint& w : pts)
    os << fmt(w.P) << ',' << fmt(w.Q) << ',' << fmt(w.value.real()) << ','
       << fmt(w.value.imag()) << '\n';
  if (!os) throw io_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os = open_out(path);
  os << text;
  if (!os) throw io_error("write failed: " + path);
}

}  // namespace qps
