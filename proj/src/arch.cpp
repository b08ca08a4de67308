#include "accelscale/arch.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace accelscale::arch {

using nlohmann::json;

const char* activation_name(ActivationKind a) {
  return a == ActivationKind::relu ? "relu" : "swish";
}

ActivationKind activation_from_name(const std::string& s) {
  if (s == "relu") return ActivationKind::relu;
  if (s == "swish") return ActivationKind::swish;
  raise(ErrorCode::ParseError, "unknown activation '" + s + "'");
}

const char* op_type_name(OpType t) {
  switch (t) {
    case OpType::Conv: return "conv";
    case OpType::DepthwiseSepConv: return "depthwise_sep_conv";
    case OpType::MBConv: return "mbconv";
    case OpType::FusedMBConv: return "fused_mbconv";
    case OpType::SpaceToDepthConv: return "space_to_depth_conv";
    case OpType::Pool: return "pool";
    case OpType::FC: return "fc";
    case OpType::Stem: return "stem";
  }
  return "unknown";
}

OpType op_type_from_name(const std::string& s) {
  if (s == "conv") return OpType::Conv;
  if (s == "depthwise_sep_conv") return OpType::DepthwiseSepConv;
  if (s == "mbconv") return OpType::MBConv;
  if (s == "fused_mbconv") return OpType::FusedMBConv;
  if (s == "space_to_depth_conv") return OpType::SpaceToDepthConv;
  if (s == "pool") return OpType::Pool;
  if (s == "fc") return OpType::FC;
  if (s == "stem") return OpType::Stem;
  raise(ErrorCode::ParseError, "unknown op kind '" + s + "'");
}

Op Op::conv(int kernel, int stride, long long out_c) {
  return Op{OpType::Conv, kernel, stride, out_c, 1, 0.0};
}

Op Op::dwsep(int kernel, int stride, long long out_c) {
  return Op{OpType::DepthwiseSepConv, kernel, stride, out_c, 1, 0.0};
}

Op Op::mbconv(int kernel, int expansion, double se_ratio, int stride,
              long long out_c) {
  return Op{OpType::MBConv, kernel, stride, out_c, expansion, se_ratio};
}

Op Op::fused_mbconv(int kernel, int expansion, double se_ratio, int stride,
                    long long out_c) {
  return Op{OpType::FusedMBConv, kernel, stride, out_c, expansion, se_ratio};
}

Op Op::space_to_depth(int block) {
  return Op{OpType::SpaceToDepthConv, block, block, 0, 1, 0.0};
}

Op Op::pool() { return Op{OpType::Pool, 1, 1, 0, 1, 0.0}; }

Op Op::fc(long long out_features) {
  return Op{OpType::FC, 1, 1, out_features, 1, 0.0};
}

Op Op::stem(int kernel, long long out_c) {
  return Op{OpType::Stem, kernel, 2, out_c, 1, 0.0};
}

namespace {

long long ceil_div(long long a, long long b) { return (a + b - 1) / b; }

bool needs_out_c(OpType t) {
  switch (t) {
    case OpType::Conv:
    case OpType::DepthwiseSepConv:
    case OpType::MBConv:
    case OpType::FusedMBConv:
    case OpType::FC:
    case OpType::Stem:
      return true;
    default:
      return false;
  }
}

void check_op(const Op& op, size_t stage_index) {
  const std::string where =
      "stage " + std::to_string(stage_index) + " (" + op_type_name(op.type) + ")";
  if (op.type == OpType::SpaceToDepthConv) {
    if (op.kernel < 2)
      raise(ErrorCode::UnsupportedOp, where + ": block must be >= 2");
    if (op.stride != op.kernel)
      raise(ErrorCode::UnsupportedOp, where + ": block conv needs stride == block");
    return;
  }
  if (op.kernel != 1 && op.kernel != 2 && op.kernel != 3 && op.kernel != 5)
    raise(ErrorCode::UnsupportedOp,
          where + ": kernel " + std::to_string(op.kernel) + " not in {1,2,3,5}");
  if (op.stride != 1 && op.stride != 2)
    raise(ErrorCode::UnsupportedOp,
          where + ": stride " + std::to_string(op.stride) + " not in {1,2}");
  if (op.expansion != 1 && op.expansion != 6)
    raise(ErrorCode::UnsupportedOp, where + ": expansion not in {1,6}");
  if (op.se_ratio < 0.0 || op.se_ratio > 1.0)
    raise(ErrorCode::UnsupportedOp, where + ": se_ratio outside [0,1]");
  if (needs_out_c(op.type) && op.out_c < 1)
    raise(ErrorCode::UnsupportedOp, where + ": out_c must be >= 1");
}

// Output shape of one op application (stride already resolved by caller).
TensorShape op_output(const Op& op, const TensorShape& in, int stride,
                      size_t stage_index) {
  TensorShape out = in;
  switch (op.type) {
    case OpType::Conv:
    case OpType::Stem:
    case OpType::DepthwiseSepConv:
    case OpType::MBConv:
    case OpType::FusedMBConv:
      out.h = ceil_div(in.h, stride);
      out.w = ceil_div(in.w, stride);
      out.c = op.out_c;
      break;
    case OpType::SpaceToDepthConv: {
      const long long b = op.kernel;
      if (in.h % b != 0 || in.w % b != 0)
        raise(ErrorCode::NonDivisibleStride,
              "stage " + std::to_string(stage_index) + ": block " +
                  std::to_string(b) + " does not divide " +
                  std::to_string(in.h) + "x" + std::to_string(in.w));
      out.h = in.h / b;
      out.w = in.w / b;
      out.c = in.c * b * b;
      break;
    }
    case OpType::Pool:
      out.h = 1;
      out.w = 1;
      break;
    case OpType::FC:
      out.h = 1;
      out.w = 1;
      out.c = op.out_c;
      break;
  }
  return out;
}

}  // namespace

ValidatedModel validate_model(const ModelSpec& spec, long long batch) {
  if (spec.stages.empty())
    raise(ErrorCode::EmptyModel, "model '" + spec.name + "' has no stages");
  if (batch < 1) raise(ErrorCode::BadRange, "batch must be >= 1");
  if (spec.input_resolution < 1)
    raise(ErrorCode::BadRange, "input_resolution must be >= 1");
  if (spec.input_channels < 1)
    raise(ErrorCode::BadRange, "input_channels must be >= 1");

  ValidatedModel vm;
  vm.spec = spec;
  vm.batch = batch;
  TensorShape cur{batch, spec.input_resolution, spec.input_resolution,
                  spec.input_channels};
  for (size_t si = 0; si < spec.stages.size(); ++si) {
    const Stage& stage = spec.stages[si];
    if (stage.repeats < 1)
      raise(ErrorCode::BadRange,
            "stage " + std::to_string(si) + ": repeats must be >= 1");
    check_op(stage.op, si);
    StageShapes shapes;
    for (int r = 0; r < stage.repeats; ++r) {
      // Stride applies to the first repeat only; later repeats keep shape.
      const int stride = (r == 0) ? stage.op.stride : 1;
      TensorShape out = op_output(stage.op, cur, stride, si);
      shapes.repeats.push_back(RepeatShapes{cur, out});
      cur = out;
    }
    vm.stages.push_back(std::move(shapes));
  }
  return vm;
}

ModelSpec build_efficientnet_b0() {
  using A = ActivationKind;
  ModelSpec m;
  m.name = "efficientnet_b0";
  m.input_resolution = 224;
  m.stages = {
      {Op::stem(3, 32), 1, A::swish, false},
      {Op::mbconv(3, 1, 0.25, 1, 16), 1, A::swish, false},
      {Op::mbconv(3, 6, 0.25, 2, 24), 2, A::swish, true},
      {Op::mbconv(5, 6, 0.25, 2, 40), 2, A::swish, true},
      {Op::mbconv(3, 6, 0.25, 2, 80), 3, A::swish, true},
      {Op::mbconv(5, 6, 0.25, 1, 112), 3, A::swish, true},
      {Op::mbconv(5, 6, 0.25, 2, 192), 4, A::swish, true},
      {Op::mbconv(3, 6, 0.25, 1, 320), 1, A::swish, false},
      {Op::conv(1, 1, 1280), 1, A::swish, false},
  };
  return m;
}

ModelSpec build_efficientnet_x_b0(Target target) {
  using A = ActivationKind;
  // On TPU the stem and the fused stages run swish, everything else relu;
  // on GPU relu everywhere.
  const A hot = (target == Target::tpu) ? A::swish : A::relu;
  ModelSpec m;
  m.name = (target == Target::tpu) ? "efficientnet_x_b0_tpu"
                                   : "efficientnet_x_b0_gpu";
  m.input_resolution = 224;
  m.stages = {
      {Op::stem(3, 32), 1, hot, false},
      {Op::space_to_depth(2), 1, A::relu, false},
      {Op::mbconv(3, 1, 1.0, 1, 64), 1, A::relu, false},
      {Op::fused_mbconv(3, 6, 0.5, 2, 24), 2, hot, true},
      {Op::fused_mbconv(5, 6, 0.25, 1, 40), 2, hot, true},
      {Op::mbconv(3, 6, 0.25, 2, 80), 3, A::relu, true},
      {Op::mbconv(5, 6, 0.25, 1, 112), 3, A::relu, true},
      {Op::mbconv(5, 6, 0.25, 2, 192), 4, A::relu, true},
      {Op::mbconv(3, 6, 0.25, 1, 320), 1, A::relu, false},
      {Op::conv(1, 1, 1280), 1, A::relu, false},
  };
  return m;
}

std::vector<ModelSpec> build_breakdown_variants() {
  using A = ActivationKind;
  std::vector<ModelSpec> out;
  out.push_back(build_efficientnet_b0());

  // Space-to-depth after the stem; the first block widens 16 -> 64 to absorb
  // the 4x channel expansion, and the downsample that the reshaping conv now
  // provides is removed from the third block.
  ModelSpec s2d;
  s2d.name = "plus_space_to_depth";
  s2d.input_resolution = 224;
  s2d.stages = {
      {Op::stem(3, 32), 1, A::swish, false},
      {Op::space_to_depth(2), 1, A::swish, false},
      {Op::mbconv(3, 1, 0.25, 1, 64), 1, A::swish, false},
      {Op::mbconv(3, 6, 0.25, 2, 24), 2, A::swish, true},
      {Op::mbconv(5, 6, 0.25, 1, 40), 2, A::swish, true},
      {Op::mbconv(3, 6, 0.25, 2, 80), 3, A::swish, true},
      {Op::mbconv(5, 6, 0.25, 1, 112), 3, A::swish, true},
      {Op::mbconv(5, 6, 0.25, 2, 192), 4, A::swish, true},
      {Op::mbconv(3, 6, 0.25, 1, 320), 1, A::swish, false},
      {Op::conv(1, 1, 1280), 1, A::swish, false},
  };
  out.push_back(std::move(s2d));

  // Fused convolutions in the low stages (full x_b0 geometry, pre-activation
  // tuning: swish everywhere).
  ModelSpec fused = build_efficientnet_x_b0(Target::tpu);
  fused.name = "plus_fused_conv";
  for (Stage& s : fused.stages) s.activation = A::swish;
  out.push_back(std::move(fused));

  out.push_back(build_efficientnet_x_b0(Target::tpu));
  return out;
}

ScaledDims scaled_dims(const ScalingCoeffs& coeffs, double phi) {
  if (phi < 0.0) raise(ErrorCode::InvalidPhi, "phi must be >= 0");
  return ScaledDims{std::pow(coeffs.alpha, phi), std::pow(coeffs.beta, phi),
                    std::pow(coeffs.gamma, phi)};
}

namespace {

long long round_half_up(double x) {
  return static_cast<long long>(std::floor(x + 0.5));
}

long long round_depth(double x, DepthRound mode) {
  long long v = 0;
  switch (mode) {
    case DepthRound::nearest: v = round_half_up(x); break;
    case DepthRound::ceil: v = static_cast<long long>(std::ceil(x)); break;
    case DepthRound::floor: v = static_cast<long long>(std::floor(x)); break;
  }
  return v < 1 ? 1 : v;
}

long long round_to_multiple(double x, int multiple) {
  long long v = multiple * round_half_up(x / multiple);
  return v < multiple ? multiple : v;
}

}  // namespace

ModelSpec apply_compound_scaling(const ModelSpec& spec,
                                 const ScalingCoeffs& coeffs, double phi,
                                 const RoundingPolicy& rounding) {
  if (coeffs.alpha < 1.0 || coeffs.beta < 1.0 || coeffs.gamma < 1.0)
    raise(ErrorCode::BadRange, "scaling coefficients must be >= 1");
  const ScaledDims dims = scaled_dims(coeffs, phi);

  ModelSpec out = spec;
  // A multiplier of exactly 1 leaves its dimension untouched (no snapping),
  // which makes (1,1,1) and phi=0 exact identities.
  if (dims.r != 1.0)
    out.input_resolution = static_cast<int>(
        round_to_multiple(spec.input_resolution * dims.r, rounding.res_multiple));
  for (Stage& stage : out.stages) {
    if (dims.d != 1.0 && stage.scalable)
      stage.repeats =
          static_cast<int>(round_depth(stage.repeats * dims.d, rounding.depth));
    if (dims.w_mult != 1.0) {
      switch (stage.op.type) {
        case OpType::Conv:
        case OpType::DepthwiseSepConv:
        case OpType::MBConv:
        case OpType::FusedMBConv:
        case OpType::Stem:
          stage.op.out_c = round_to_multiple(stage.op.out_c * dims.w_mult,
                                             rounding.width_multiple);
          break;
        default:
          // Reshaping convs derive width from their input; pool keeps it;
          // fc heads are classifier-sized and do not scale.
          break;
      }
    }
  }
  return out;
}

long long count_total_depth(const ModelSpec& spec) {
  long long depth = 0;
  for (const Stage& s : spec.stages) {
    const OpType t = s.op.type;
    const bool block = t == OpType::MBConv || t == OpType::FusedMBConv ||
                       t == OpType::DepthwiseSepConv;
    if (s.scalable || block) depth += s.repeats;
  }
  return depth;
}

namespace {

void check_object_keys(const json& j, std::initializer_list<const char*> keys,
                       const char* ctx) {
  if (!j.is_object())
    raise(ErrorCode::ParseError, std::string(ctx) + ": expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : keys)
      if (item.key() == k) known = true;
    if (!known)
      raise(ErrorCode::ParseError,
            std::string(ctx) + ": unknown field '" + item.key() + "'");
  }
  for (const char* k : keys)
    if (!j.contains(k))
      raise(ErrorCode::ParseError,
            std::string(ctx) + ": missing field '" + std::string(k) + "'");
}

template <typename T>
T get_field(const json& j, const char* key, const char* ctx) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError,
          std::string(ctx) + ": bad value for '" + key + "': " + e.what());
  }
}

}  // namespace

json model_to_json(const ModelSpec& spec) {
  json stages = json::array();
  for (const Stage& s : spec.stages) {
    stages.push_back({
        {"op", op_type_name(s.op.type)},
        {"kernel", s.op.kernel},
        {"stride", s.op.stride},
        {"out_c", s.op.out_c},
        {"expansion", s.op.expansion},
        {"se_ratio", s.op.se_ratio},
        {"repeats", s.repeats},
        {"activation", activation_name(s.activation)},
        {"scalable", s.scalable},
    });
  }
  return json{{"name", spec.name},
              {"input_resolution", spec.input_resolution},
              {"stages", std::move(stages)}};
}

ModelSpec model_from_json(const json& j) {
  check_object_keys(j, {"name", "input_resolution", "stages"}, "model");
  ModelSpec spec;
  spec.name = get_field<std::string>(j, "name", "model");
  spec.input_resolution = get_field<int>(j, "input_resolution", "model");
  const json& stages = j.at("stages");
  if (!stages.is_array())
    raise(ErrorCode::ParseError, "model: 'stages' must be an array");
  for (const json& js : stages) {
    check_object_keys(js,
                      {"op", "kernel", "stride", "out_c", "expansion",
                       "se_ratio", "repeats", "activation", "scalable"},
                      "stage");
    Stage s;
    s.op.type = op_type_from_name(get_field<std::string>(js, "op", "stage"));
    s.op.kernel = get_field<int>(js, "kernel", "stage");
    s.op.stride = get_field<int>(js, "stride", "stage");
    s.op.out_c = get_field<long long>(js, "out_c", "stage");
    s.op.expansion = get_field<int>(js, "expansion", "stage");
    s.op.se_ratio = get_field<double>(js, "se_ratio", "stage");
    s.repeats = get_field<int>(js, "repeats", "stage");
    s.activation =
        activation_from_name(get_field<std::string>(js, "activation", "stage"));
    s.scalable = get_field<bool>(js, "scalable", "stage");
    spec.stages.push_back(s);
  }
  return spec;
}

ModelSpec load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    raise(ErrorCode::ParseError, "cannot open model file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError, "model file '" + path + "': " + e.what());
  }
  return model_from_json(j);
}

void save_model_file(const ModelSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    raise(ErrorCode::ParseError, "cannot write model file '" + path + "'");
  out << model_to_json(spec).dump(2) << "\n";
}

}  // namespace accelscale::arch
