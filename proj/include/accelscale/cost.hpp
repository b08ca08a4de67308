#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "accelscale/arch.hpp"
#include "accelscale/errors.hpp"

// Roofline cost model: closed-form MAC/traffic accounting per op, matrix- vs
// vector-unit contention, regime classification, and per-model aggregation.
namespace accelscale::cost {

struct Efficiency {
  double dense = 1.0;        // dense convs / matmuls on the matrix unit
  double depthwise = 1.0;    // depthwise convs on the vector unit
  double elementwise = 1.0;  // activations, pooling, channel scaling
};

struct HardwareProfile {
  std::string name;
  double peak_matrix_ops = 0.0;      // ops/s at full matrix-unit utilization
  double peak_vector_ops = 0.0;      // ops/s on the vector unit
  double mem_bandwidth_bytes = 0.0;  // bytes/s
  int bytes_per_element = 2;
  std::set<arch::ActivationKind> fused_activations;
  Efficiency efficiency;
};

enum class Regime { compute_bound, memory_bound };

const char* regime_name(Regime r);

// Raw work/traffic accounting for one op application, before any hardware
// constants are applied.
struct CostParts {
  double w_matrix = 0.0;  // MACs executed on the matrix unit
  double w_dw = 0.0;      // depthwise MACs (vector unit)
  double w_elem = 0.0;    // elementwise vector ops
  double q_elems = 0.0;   // memory traffic in elements

  CostParts& operator+=(const CostParts& o);
};

struct OpCost {
  double flops = 0.0;      // MAC count (matrix + depthwise)
  double w_matrix = 0.0;
  double w_vector = 0.0;   // depthwise MACs + elementwise ops
  double mem_elems = 0.0;  // element traffic Q_e
  double mem_bytes = 0.0;  // Q = Q_e * bytes_per_element
  double intensity = 0.0;        // flops / Q (ops per byte)
  double intensity_elems = 0.0;  // flops / Q_e (ops per element)
  double matrix_time = 0.0;
  double vector_time = 0.0;
  double mem_time = 0.0;
  double latency = 0.0;  // max of the three times
  Regime regime = Regime::compute_bound;
};

// Per-stage aggregate over all repeats. Times and traffic are sums; latency
// is the sum of per-repeat latencies, so unlike OpCost it may exceed the max
// of the summed times. Regime reflects the dominant summed time.
struct StageCost {
  int index = 0;
  std::string op_name;
  long long repeats = 0;
  double flops = 0.0;
  double w_matrix = 0.0;
  double w_vector = 0.0;
  double mem_elems = 0.0;
  double mem_bytes = 0.0;
  double intensity = 0.0;
  double matrix_time = 0.0;
  double vector_time = 0.0;
  double mem_time = 0.0;
  double latency = 0.0;
  Regime regime = Regime::compute_bound;
};

struct ModelCost {
  std::vector<StageCost> stages;
  long long batch = 1;
  double total_flops = 0.0;
  double total_elems = 0.0;
  double total_bytes = 0.0;
  double aggregate_intensity = 0.0;  // total_flops / total_bytes
  double total_latency = 0.0;
  double achieved_efficiency = 0.0;  // vs the roofline rate at aggregate I
};

// Exact-integer closed forms for the square stride-1 Cin==Cout case. The
// intensity variants divide integer op and element counts, so they agree
// with a brute-force loop-nest counter to the last bit.
unsigned long long conv_flops(unsigned long long n, unsigned long long h,
                              unsigned long long w, unsigned long long c,
                              unsigned long long k);
double conv_intensity(unsigned long long n, unsigned long long h,
                      unsigned long long w, unsigned long long c,
                      unsigned long long k);
unsigned long long dwsep_flops(unsigned long long n, unsigned long long h,
                               unsigned long long w, unsigned long long c,
                               unsigned long long k);
double dwsep_intensity(unsigned long long n, unsigned long long h,
                       unsigned long long w, unsigned long long c,
                       unsigned long long k);

// Applies hardware constants to raw accounting. Exposed so the roofline
// arithmetic can be exercised directly with synthetic work/traffic numbers.
OpCost assemble_op_cost(const CostParts& parts, const HardwareProfile& profile);

// Work/traffic accounting for one application of `op` on `in` using the
// op's own stride. Callers costing repeat 2..L pass a stride-1 copy.
OpCost op_cost(const arch::Op& op, const arch::TensorShape& in,
               arch::ActivationKind activation, const HardwareProfile& profile);

ModelCost model_cost(const arch::ValidatedModel& model,
                     const HardwareProfile& profile);

// Total MAC count of a model (profile-independent).
double model_flops(const arch::ModelSpec& spec, long long batch = 1);

double ridge_point(const HardwareProfile& profile);

// min(I * bandwidth, peak_matrix); returns the peak exactly at and beyond
// the ridge point.
double roofline_rate(const HardwareProfile& profile, double intensity);

std::vector<std::pair<double, double>> roofline_curve(
    const HardwareProfile& profile, double i_min, double i_max, int n_points);

// Evaluates the cost of `base` scaled by (coeffs, phi) on real-valued
// dimensions: fractional channels, resolution, and repeat counts, with no
// rounding anywhere. This is the smooth latency(phi) used by phi fitting.
ModelCost model_cost_continuous(const arch::ModelSpec& base,
                                const arch::ScalingCoeffs& coeffs, double phi,
                                const HardwareProfile& profile, double batch);

HardwareProfile tpu_v3_like();
HardwareProfile gpu_v100_like();
HardwareProfile cpu_like();
const std::vector<std::string>& builtin_profile_names();
HardwareProfile builtin_profile(const std::string& name);

nlohmann::json profile_to_json(const HardwareProfile& profile);
HardwareProfile profile_from_json(const nlohmann::json& j);
HardwareProfile load_profile_file(const std::string& path);
void save_profile_file(const HardwareProfile& profile, const std::string& path);

}  // namespace accelscale::cost
