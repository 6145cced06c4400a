#pragma once

#include <string>

#include "qps/cells.hpp"
#include "qps/detector.hpp"
#include "qps/grid.hpp"
#include "qps/nonclass.hpp"
#include "qps/smoothing.hpp"
#include "qps/weyl.hpp"

namespace qps {

// CSV: header "x,p,value", rows x-major, %.17g (round-trip exact).
void write_field_csv(const ScalarField& field, const std::string& path);

// JSON manifest {grid, kind, stats:{min,max,mass}} (+ kernel when given).
std::string field_manifest_json(const ScalarField& field,
                                const SmoothingKernel* kernel = nullptr);

// Diverging heat map, white at zero, blue negative, red positive. Binary P6.
void write_field_ppm(const ScalarField& field, const std::string& path);

// Density matrix as {dim, hbar, tail_weight, re[][], im[][]}.
std::string density_to_json(const FockDensityMatrix& rho);
FockDensityMatrix density_from_json(const std::string& text);
void write_density_json(const FockDensityMatrix& rho, const std::string& path);
FockDensityMatrix read_density_json(const std::string& path);

// Partition as {coverage, cells:[{id, x_lo, x_hi, p_lo, p_hi}]}.
std::string partition_to_json(const CellPartition& part);
CellPartition partition_from_json(const std::string& text, double hbar);
void write_partition_json(const CellPartition& part, const std::string& path);
CellPartition read_partition_json(const std::string& path, double hbar);

// CSV: "id,P,err_bound,negative".
void write_probabilities_csv(const PartitionProbabilities& probs,
                             const std::string& path);

// CSV: "k,p_k,P_k".
void write_readout_csv(const DetectorReadout& readout, const std::string& path);
std::string readout_summary_json(const DetectorReadout& readout,
                                 const DetectorSpec& spec);

std::string report_to_json(const NonclassicalityReport& rep, const PhysicsConfig& cfg);

// Weyl-function samples as CSV "P,Q,re,im".
void write_weyl_csv(const std::vector<WeylPoint>& pts, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qps
