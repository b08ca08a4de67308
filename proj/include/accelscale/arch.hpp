#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "accelscale/errors.hpp"

// Architecture intermediate representation: staged CNN skeletons, shape
// propagation, builtin models, and compound depth/width/resolution scaling.
namespace accelscale::arch {

struct TensorShape {
  long long n = 1;  // batch
  long long h = 1;  // height
  long long w = 1;  // width
  long long c = 1;  // channels

  bool operator==(const TensorShape&) const = default;
};

enum class ActivationKind { relu, swish };

const char* activation_name(ActivationKind a);
ActivationKind activation_from_name(const std::string& s);

enum class OpType {
  Conv,
  DepthwiseSepConv,
  MBConv,
  FusedMBConv,
  SpaceToDepthConv,
  Pool,
  FC,
  Stem,
};

const char* op_type_name(OpType t);
OpType op_type_from_name(const std::string& s);

// One tagged struct covers all op kinds; unused fields keep neutral values.
struct Op {
  OpType type = OpType::Conv;
  int kernel = 1;        // conv kernel; block size for SpaceToDepthConv
  int stride = 1;
  long long out_c = 0;   // output channels; out_features for FC
  int expansion = 1;     // MBConv / FusedMBConv
  double se_ratio = 0.0; // squeeze-excite ratio; 0 disables SE

  static Op conv(int kernel, int stride, long long out_c);
  static Op dwsep(int kernel, int stride, long long out_c);
  static Op mbconv(int kernel, int expansion, double se_ratio, int stride,
                   long long out_c);
  static Op fused_mbconv(int kernel, int expansion, double se_ratio,
                         int stride, long long out_c);
  static Op space_to_depth(int block);
  static Op pool();
  static Op fc(long long out_features);
  static Op stem(int kernel, long long out_c);  // always downsamples by 2

  bool operator==(const Op&) const = default;
};

struct Stage {
  Op op;
  int repeats = 1;
  ActivationKind activation = ActivationKind::relu;
  bool scalable = false;  // repeats participate in depth scaling

  bool operator==(const Stage&) const = default;
};

struct ModelSpec {
  std::string name;
  int input_resolution = 224;
  // Input feature depth (3 for RGB). Not part of the serialized schema; kept
  // in memory so toy models with arbitrary input widths can be built in code.
  int input_channels = 3;
  std::vector<Stage> stages;

  bool operator==(const ModelSpec&) const = default;
};

struct RepeatShapes {
  TensorShape in;
  TensorShape out;
};

struct StageShapes {
  std::vector<RepeatShapes> repeats;  // one entry per repeat
};

// A spec annotated with the input/output shape of every stage repeat.
struct ValidatedModel {
  ModelSpec spec;
  long long batch = 1;
  std::vector<StageShapes> stages;
};

// Propagates shapes through every stage repeat, checking op parameters.
// Strided convs use ceil division (same-padding); SpaceToDepthConv requires
// exact divisibility (NonDivisibleStride otherwise).
ValidatedModel validate_model(const ModelSpec& spec, long long batch = 1);

enum class Target { tpu, gpu };

ModelSpec build_efficientnet_b0();
ModelSpec build_efficientnet_x_b0(Target target);

// Four-step enhancement chain: baseline b0, +space-to-depth, +fused convs,
// and the full x_b0 (per-target activations; the tpu flavor is returned).
std::vector<ModelSpec> build_breakdown_variants();

struct ScalingCoeffs {
  double alpha = 1.0;  // depth base
  double beta = 1.0;   // width base
  double gamma = 1.0;  // resolution base

  bool operator==(const ScalingCoeffs&) const = default;
};

struct ScaledDims {
  double d = 1.0;       // alpha^phi
  double w_mult = 1.0;  // beta^phi
  double r = 1.0;       // gamma^phi
};

ScaledDims scaled_dims(const ScalingCoeffs& coeffs, double phi);

enum class DepthRound { nearest, ceil, floor };

struct RoundingPolicy {
  DepthRound depth = DepthRound::nearest;
  int width_multiple = 8;  // channel counts snap to this multiple (min one)
  int res_multiple = 8;    // input resolution snaps to this multiple
};

// Returns a new spec with scalable-stage repeats scaled by alpha^phi, all
// conv channel widths by beta^phi, and the input resolution by gamma^phi,
// each rounded per policy. A dimension whose multiplier is exactly 1 is
// left untouched, so coeffs (1,1,1) is the identity for every phi.
ModelSpec apply_compound_scaling(const ModelSpec& spec,
                                 const ScalingCoeffs& coeffs, double phi,
                                 const RoundingPolicy& rounding = {});

// Total layer count: sum of repeats over stages that are depth-scalable or
// whose op is a bottleneck block (MBConv / FusedMBConv / DepthwiseSepConv).
// Structural stages (stem, reshaping convs, heads) do not count.
long long count_total_depth(const ModelSpec& spec);

nlohmann::json model_to_json(const ModelSpec& spec);
ModelSpec model_from_json(const nlohmann::json& j);
ModelSpec load_model_file(const std::string& path);
void save_model_file(const ModelSpec& spec, const std::string& path);

}  // namespace accelscale::arch
