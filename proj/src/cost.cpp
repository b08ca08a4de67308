#include "accelscale/cost.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>

namespace accelscale::cost {

using arch::ActivationKind;
using arch::Op;
using arch::OpType;
using arch::TensorShape;
using nlohmann::json;

const char* regime_name(Regime r) {
  return r == Regime::compute_bound ? "compute_bound" : "memory_bound";
}

CostParts& CostParts::operator+=(const CostParts& o) {
  w_matrix += o.w_matrix;
  w_dw += o.w_dw;
  w_elem += o.w_elem;
  q_elems += o.q_elems;
  return *this;
}

// ---------------------------------------------------------------------------
// Exact integer closed forms.

namespace {

unsigned long long checked(unsigned __int128 v, const char* what) {
  if (v > static_cast<unsigned __int128>(UINT64_MAX))
    raise(ErrorCode::BadRange, std::string(what) + ": 64-bit overflow");
  return static_cast<unsigned long long>(v);
}

unsigned long long mul_chain(std::initializer_list<unsigned long long> xs,
                             const char* what) {
  unsigned __int128 acc = 1;
  for (unsigned long long x : xs) acc = static_cast<unsigned __int128>(checked(acc, what)) * x;
  return checked(acc, what);
}

void require_positive(std::initializer_list<unsigned long long> xs,
                      const char* what) {
  for (unsigned long long x : xs)
    if (x < 1) raise(ErrorCode::BadRange, std::string(what) + ": args must be >= 1");
}

}  // namespace

unsigned long long conv_flops(unsigned long long n, unsigned long long h,
                              unsigned long long w, unsigned long long c,
                              unsigned long long k) {
  require_positive({n, h, w, c, k}, "conv_flops");
  return mul_chain({n, h, w, c, c, k, k}, "conv_flops");
}

double conv_intensity(unsigned long long n, unsigned long long h,
                      unsigned long long w, unsigned long long c,
                      unsigned long long k) {
  require_positive({n, h, w, c, k}, "conv_intensity");
  const unsigned long long num = conv_flops(n, h, w, c, k);
  const unsigned __int128 den =
      static_cast<unsigned __int128>(2) * mul_chain({n, h, w, c}, "conv_intensity") +
      mul_chain({c, c, k, k}, "conv_intensity");
  return static_cast<double>(num) / static_cast<double>(checked(den, "conv_intensity"));
}

unsigned long long dwsep_flops(unsigned long long n, unsigned long long h,
                               unsigned long long w, unsigned long long c,
                               unsigned long long k) {
  require_positive({n, h, w, c, k}, "dwsep_flops");
  const unsigned long long taps = checked(
      static_cast<unsigned __int128>(c) + mul_chain({k, k}, "dwsep_flops"),
      "dwsep_flops");
  return mul_chain({n, h, w, c, taps}, "dwsep_flops");
}

double dwsep_intensity(unsigned long long n, unsigned long long h,
                       unsigned long long w, unsigned long long c,
                       unsigned long long k) {
  require_positive({n, h, w, c, k}, "dwsep_intensity");
  const unsigned long long num = dwsep_flops(n, h, w, c, k);
  const unsigned __int128 den =
      static_cast<unsigned __int128>(4) * mul_chain({n, h, w, c}, "dwsep_intensity") +
      mul_chain({c, k, k}, "dwsep_intensity") + mul_chain({c, c}, "dwsep_intensity");
  return static_cast<double>(num) / static_cast<double>(checked(den, "dwsep_intensity"));
}

// ---------------------------------------------------------------------------
// Generalized accounting on real-valued dimensions. The integer path feeds
// exact integers through the same arithmetic (exact in doubles well past any
// realistic model size), so both paths share one set of formulas.

namespace {

struct RealShape {
  double n = 1, h = 1, w = 1, c = 1;
};

struct OpEval {
  CostParts parts;
  RealShape out;
};

double act_ops_per_elem(ActivationKind a) {
  // swish needs ~4 vector ops per element, relu one.
  return a == ActivationKind::swish ? 4.0 : 1.0;
}

void add_activation(CostParts& p, ActivationKind act,
                    const std::set<ActivationKind>& fused, double elems) {
  p.w_elem += act_ops_per_elem(act) * elems;
  if (!fused.count(act)) p.q_elems += 2.0 * elems;  // extra read + write
}

// Dense conv: input + output activations + weights traffic.
void add_conv(CostParts& p, double n, double hi, double wi, double ho,
              double wo, double cin, double cout, double k) {
  p.w_matrix += n * ho * wo * cin * cout * k * k;
  p.q_elems += n * hi * wi * cin + n * ho * wo * cout + cin * cout * k * k;
}

// Squeeze-excite at width `ch` on an ho x wo map: two FCs ch -> cse -> ch
// plus two elementwise passes over the map.
void add_se(CostParts& p, double n, double ho, double wo, double ch,
            double se_ratio, bool integer_mode) {
  if (se_ratio <= 0.0) return;
  const double cse = integer_mode ? std::ceil(se_ratio * ch) : se_ratio * ch;
  p.w_matrix += 2.0 * n * ch * cse;
  p.w_elem += 2.0 * n * ho * wo * ch;
  p.q_elems += 3.0 * n * ho * wo * ch + 2.0 * ch * cse + 2.0 * n * (ch + cse);
}

void check_op_params(const Op& op) {
  if (op.type == OpType::SpaceToDepthConv) {
    if (op.kernel < 2)
      raise(ErrorCode::UnsupportedOp, "space_to_depth block must be >= 2");
    return;
  }
  if (op.kernel != 1 && op.kernel != 2 && op.kernel != 3 && op.kernel != 5)
    raise(ErrorCode::UnsupportedOp,
          "kernel " + std::to_string(op.kernel) + " not in {1,2,3,5}");
  if (op.expansion != 1 && op.expansion != 6)
    raise(ErrorCode::UnsupportedOp, "expansion not in {1,6}");
  if (op.se_ratio < 0.0 || op.se_ratio > 1.0)
    raise(ErrorCode::UnsupportedOp, "se_ratio outside [0,1]");
}

// One application of `op` with the given stride. `w_mult` scales the op's
// own output width (continuous path); the integer path passes 1.
OpEval eval_op(const Op& op, const RealShape& in, int stride,
               ActivationKind act, const std::set<ActivationKind>& fused,
               bool integer_mode, double w_mult) {
  check_op_params(op);
  const double n = in.n, hi = in.h, wi = in.w, cin = in.c;
  auto down = [&](double x, int s) {
    return integer_mode ? std::ceil(x / s) : x / s;
  };
  const double ho = down(hi, stride), wo = down(wi, stride);

  OpEval ev;
  CostParts& p = ev.parts;
  ev.out = RealShape{n, ho, wo, cin};

  switch (op.type) {
    case OpType::Conv:
    case OpType::Stem: {
      const double cout = op.out_c * w_mult;
      add_conv(p, n, hi, wi, ho, wo, cin, cout, op.kernel);
      add_activation(p, act, fused, n * ho * wo * cout);
      ev.out.c = cout;
      break;
    }
    case OpType::DepthwiseSepConv: {
      const double cout = op.out_c * w_mult;
      const double k = op.kernel;
      p.w_dw += n * ho * wo * cin * k * k;
      p.q_elems += n * hi * wi * cin + n * ho * wo * cin + cin * k * k;
      add_activation(p, act, fused, n * ho * wo * cin);
      add_conv(p, n, ho, wo, ho, wo, cin, cout, 1);
      add_activation(p, act, fused, n * ho * wo * cout);
      ev.out.c = cout;
      break;
    }
    case OpType::MBConv: {
      const double cout = op.out_c * w_mult;
      const double k = op.kernel;
      const double ech = op.expansion * cin;
      if (op.expansion > 1) {
        add_conv(p, n, hi, wi, hi, wi, cin, ech, 1);
        add_activation(p, act, fused, n * hi * wi * ech);
      }
      p.w_dw += n * ho * wo * ech * k * k;
      p.q_elems += n * hi * wi * ech + n * ho * wo * ech + ech * k * k;
      add_activation(p, act, fused, n * ho * wo * ech);
      add_se(p, n, ho, wo, ech, op.se_ratio, integer_mode);
      add_conv(p, n, ho, wo, ho, wo, ech, cout, 1);  // linear projection
      ev.out.c = cout;
      break;
    }
    case OpType::FusedMBConv: {
      const double cout = op.out_c * w_mult;
      const double k = op.kernel;
      if (op.expansion > 1) {
        const double ech = op.expansion * cin;
        add_conv(p, n, hi, wi, ho, wo, cin, ech, k);
        add_activation(p, act, fused, n * ho * wo * ech);
        add_se(p, n, ho, wo, ech, op.se_ratio, integer_mode);
        add_conv(p, n, ho, wo, ho, wo, ech, cout, 1);  // linear projection
      } else {
        add_conv(p, n, hi, wi, ho, wo, cin, cout, k);
        add_activation(p, act, fused, n * ho * wo * cout);
        add_se(p, n, ho, wo, cout, op.se_ratio, integer_mode);
      }
      ev.out.c = cout;
      break;
    }
    case OpType::SpaceToDepthConv: {
      // Reshaping conv: every application divides by the block, so the
      // caller-resolved stride is irrelevant here.
      const double b = op.kernel;
      const double h2 = integer_mode ? std::floor(hi / b) : hi / b;
      const double w2 = integer_mode ? std::floor(wi / b) : wi / b;
      const double cout = cin * b * b;
      add_conv(p, n, hi, wi, h2, w2, cin, cout, b);
      add_activation(p, act, fused, n * h2 * w2 * cout);
      ev.out = RealShape{n, h2, w2, cout};
      break;
    }
    case OpType::Pool: {
      p.w_elem += n * hi * wi * cin;
      p.q_elems += n * hi * wi * cin + n * cin;
      ev.out = RealShape{n, 1, 1, cin};
      break;
    }
    case OpType::FC: {
      const double flat = hi * wi * cin;
      const double cout = static_cast<double>(op.out_c);  // classifier width
      p.w_matrix += n * flat * cout;
      p.q_elems += n * flat + n * cout + flat * cout;
      ev.out = RealShape{n, 1, 1, cout};
      break;
    }
  }
  return ev;
}

Regime regime_of(double matrix_time, double vector_time, double mem_time) {
  return (mem_time > matrix_time && mem_time > vector_time)
             ? Regime::memory_bound
             : Regime::compute_bound;
}

}  // namespace

OpCost assemble_op_cost(const CostParts& parts, const HardwareProfile& profile) {
  OpCost c;
  c.w_matrix = parts.w_matrix;
  c.flops = parts.w_matrix + parts.w_dw;
  c.w_vector = parts.w_dw + parts.w_elem;
  c.mem_elems = parts.q_elems;
  c.mem_bytes = parts.q_elems * profile.bytes_per_element;
  c.intensity = c.mem_bytes > 0.0 ? c.flops / c.mem_bytes : 0.0;
  c.intensity_elems = c.mem_elems > 0.0 ? c.flops / c.mem_elems : 0.0;
  c.matrix_time =
      parts.w_matrix / (profile.peak_matrix_ops * profile.efficiency.dense);
  c.vector_time =
      parts.w_dw / (profile.peak_vector_ops * profile.efficiency.depthwise) +
      parts.w_elem / (profile.peak_vector_ops * profile.efficiency.elementwise);
  c.mem_time = c.mem_bytes / profile.mem_bandwidth_bytes;
  c.latency = std::max({c.matrix_time, c.vector_time, c.mem_time});
  c.regime = regime_of(c.matrix_time, c.vector_time, c.mem_time);
  return c;
}

OpCost op_cost(const Op& op, const TensorShape& in, ActivationKind activation,
               const HardwareProfile& profile) {
  if (op.type == OpType::SpaceToDepthConv &&
      (in.h % op.kernel != 0 || in.w % op.kernel != 0))
    raise(ErrorCode::NonDivisibleStride,
          "block " + std::to_string(op.kernel) + " does not divide " +
              std::to_string(in.h) + "x" + std::to_string(in.w));
  const RealShape rin{static_cast<double>(in.n), static_cast<double>(in.h),
                      static_cast<double>(in.w), static_cast<double>(in.c)};
  const OpEval ev = eval_op(op, rin, op.stride, activation,
                            profile.fused_activations, true, 1.0);
  return assemble_op_cost(ev.parts, profile);
}

ModelCost model_cost(const arch::ValidatedModel& model,
                     const HardwareProfile& profile) {
  ModelCost mc;
  mc.batch = model.batch;
  for (size_t si = 0; si < model.spec.stages.size(); ++si) {
    const arch::Stage& stage = model.spec.stages[si];
    StageCost sc;
    sc.index = static_cast<int>(si);
    sc.op_name = arch::op_type_name(stage.op.type);
    sc.repeats = stage.repeats;
    for (size_t r = 0; r < model.stages[si].repeats.size(); ++r) {
      Op rep = stage.op;
      if (r > 0) rep.stride = 1;  // stride applies to the first repeat only
      const OpCost oc = op_cost(rep, model.stages[si].repeats[r].in,
                                stage.activation, profile);
      sc.flops += oc.flops;
      sc.w_matrix += oc.w_matrix;
      sc.w_vector += oc.w_vector;
      sc.mem_elems += oc.mem_elems;
      sc.mem_bytes += oc.mem_bytes;
      sc.matrix_time += oc.matrix_time;
      sc.vector_time += oc.vector_time;
      sc.mem_time += oc.mem_time;
      sc.latency += oc.latency;
    }
    sc.intensity = sc.mem_bytes > 0.0 ? sc.flops / sc.mem_bytes : 0.0;
    sc.regime = regime_of(sc.matrix_time, sc.vector_time, sc.mem_time);
    mc.total_flops += sc.flops;
    mc.total_elems += sc.mem_elems;
    mc.total_bytes += sc.mem_bytes;
    mc.total_latency += sc.latency;
    mc.stages.push_back(std::move(sc));
  }
  mc.aggregate_intensity =
      mc.total_bytes > 0.0 ? mc.total_flops / mc.total_bytes : 0.0;
  if (mc.total_latency > 0.0 && mc.aggregate_intensity > 0.0)
    mc.achieved_efficiency =
        mc.total_flops /
        (mc.total_latency * roofline_rate(profile, mc.aggregate_intensity));
  return mc;
}

double model_flops(const arch::ModelSpec& spec, long long batch) {
  const arch::ValidatedModel vm = arch::validate_model(spec, batch);
  const std::set<ActivationKind> no_fusion;
  double flops = 0.0;
  for (size_t si = 0; si < vm.spec.stages.size(); ++si) {
    const arch::Stage& stage = vm.spec.stages[si];
    for (size_t r = 0; r < vm.stages[si].repeats.size(); ++r) {
      Op rep = stage.op;
      if (r > 0) rep.stride = 1;
      const TensorShape& in = vm.stages[si].repeats[r].in;
      const RealShape rin{static_cast<double>(in.n), static_cast<double>(in.h),
                          static_cast<double>(in.w), static_cast<double>(in.c)};
      const OpEval ev =
          eval_op(rep, rin, rep.stride, stage.activation, no_fusion, true, 1.0);
      flops += ev.parts.w_matrix + ev.parts.w_dw;
    }
  }
  return flops;
}

double ridge_point(const HardwareProfile& profile) {
  return profile.peak_matrix_ops / profile.mem_bandwidth_bytes;
}

double roofline_rate(const HardwareProfile& profile, double intensity) {
  // Branch instead of min() so the rate is the peak bit-for-bit at the ridge.
  if (intensity >= ridge_point(profile)) return profile.peak_matrix_ops;
  return intensity * profile.mem_bandwidth_bytes;
}

std::vector<std::pair<double, double>> roofline_curve(
    const HardwareProfile& profile, double i_min, double i_max, int n_points) {
  if (!(i_min > 0.0) || !(i_max > i_min))
    raise(ErrorCode::BadRange, "roofline_curve needs 0 < i_min < i_max");
  if (n_points < 2) raise(ErrorCode::BadRange, "roofline_curve needs >= 2 points");
  std::vector<std::pair<double, double>> pts;
  pts.reserve(n_points);
  const double lo = std::log(i_min), hi = std::log(i_max);
  for (int j = 0; j < n_points; ++j) {
    double i = std::exp(lo + (hi - lo) * j / (n_points - 1));
    if (j == 0) i = i_min;
    if (j == n_points - 1) i = i_max;
    pts.emplace_back(i, roofline_rate(profile, i));
  }
  return pts;
}

ModelCost model_cost_continuous(const arch::ModelSpec& base,
                                const arch::ScalingCoeffs& coeffs, double phi,
                                const HardwareProfile& profile, double batch) {
  if (!(batch > 0.0)) raise(ErrorCode::BadRange, "batch must be > 0");
  if (base.stages.empty())
    raise(ErrorCode::EmptyModel, "model '" + base.name + "' has no stages");
  const arch::ScaledDims dims = arch::scaled_dims(coeffs, phi);

  ModelCost mc;
  mc.batch = static_cast<long long>(std::llround(batch));
  RealShape cur{batch, base.input_resolution * dims.r,
                base.input_resolution * dims.r,
                static_cast<double>(base.input_channels)};
  for (size_t si = 0; si < base.stages.size(); ++si) {
    const arch::Stage& stage = base.stages[si];
    const double repeats =
        stage.scalable ? stage.repeats * dims.d : stage.repeats;

    const OpEval first = eval_op(stage.op, cur, stage.op.stride,
                                 stage.activation, profile.fused_activations,
                                 false, dims.w_mult);
    const OpCost first_cost = assemble_op_cost(first.parts, profile);

    StageCost sc;
    sc.index = static_cast<int>(si);
    sc.op_name = arch::op_type_name(stage.op.type);
    sc.repeats = static_cast<long long>(std::llround(repeats));
    CostParts parts = first.parts;
    sc.latency = first_cost.latency;
    sc.matrix_time = first_cost.matrix_time;
    sc.vector_time = first_cost.vector_time;
    sc.mem_time = first_cost.mem_time;
    cur = first.out;
    if (repeats > 1.0) {
      Op rep = stage.op;
      rep.stride = 1;
      const OpEval rest = eval_op(rep, first.out, 1, stage.activation,
                                  profile.fused_activations, false, dims.w_mult);
      const OpCost rest_cost = assemble_op_cost(rest.parts, profile);
      const double extra = repeats - 1.0;
      parts.w_matrix += extra * rest.parts.w_matrix;
      parts.w_dw += extra * rest.parts.w_dw;
      parts.w_elem += extra * rest.parts.w_elem;
      parts.q_elems += extra * rest.parts.q_elems;
      sc.latency += extra * rest_cost.latency;
      sc.matrix_time += extra * rest_cost.matrix_time;
      sc.vector_time += extra * rest_cost.vector_time;
      sc.mem_time += extra * rest_cost.mem_time;
      cur = rest.out;
    }
    sc.flops = parts.w_matrix + parts.w_dw;
    sc.w_matrix = parts.w_matrix;
    sc.w_vector = parts.w_dw + parts.w_elem;
    sc.mem_elems = parts.q_elems;
    sc.mem_bytes = parts.q_elems * profile.bytes_per_element;
    sc.intensity = sc.mem_bytes > 0.0 ? sc.flops / sc.mem_bytes : 0.0;
    sc.regime = regime_of(sc.matrix_time, sc.vector_time, sc.mem_time);

    mc.total_flops += sc.flops;
    mc.total_elems += sc.mem_elems;
    mc.total_bytes += sc.mem_bytes;
    mc.total_latency += sc.latency;
    mc.stages.push_back(std::move(sc));
  }
  mc.aggregate_intensity =
      mc.total_bytes > 0.0 ? mc.total_flops / mc.total_bytes : 0.0;
  if (mc.total_latency > 0.0 && mc.aggregate_intensity > 0.0)
    mc.achieved_efficiency =
        mc.total_flops /
        (mc.total_latency * roofline_rate(profile, mc.aggregate_intensity));
  return mc;
}

// ---------------------------------------------------------------------------
// Builtin profiles + serialization.

HardwareProfile tpu_v3_like() {
  HardwareProfile p;
  p.name = "tpu_v3_like";
  p.peak_matrix_ops = 123e12;
  p.peak_vector_ops = 4e12;
  p.mem_bandwidth_bytes = 900e9;
  p.bytes_per_element = 2;
  p.fused_activations = {ActivationKind::relu, ActivationKind::swish};
  p.efficiency = {0.55, 0.40, 0.90};
  return p;
}

HardwareProfile gpu_v100_like() {
  HardwareProfile p;
  p.name = "gpu_v100_like";
  p.peak_matrix_ops = 125e12;
  p.peak_vector_ops = 31.4e12;
  p.mem_bandwidth_bytes = 900e9;
  p.bytes_per_element = 2;
  p.fused_activations = {ActivationKind::relu};
  p.efficiency = {0.50, 0.35, 0.90};
  return p;
}

HardwareProfile cpu_like() {
  HardwareProfile p;
  p.name = "cpu_like";
  p.peak_matrix_ops = 3.5e12;
  p.peak_vector_ops = 3.5e12;
  p.mem_bandwidth_bytes = 128e9;
  p.bytes_per_element = 4;
  p.fused_activations = {ActivationKind::relu};
  p.efficiency = {0.80, 0.80, 0.90};
  return p;
}

const std::vector<std::string>& builtin_profile_names() {
  static const std::vector<std::string> names = {"tpu_v3_like", "gpu_v100_like",
                                                 "cpu_like"};
  return names;
}

HardwareProfile builtin_profile(const std::string& name) {
  if (name == "tpu_v3_like") return tpu_v3_like();
  if (name == "gpu_v100_like") return gpu_v100_like();
  if (name == "cpu_like") return cpu_like();
  raise(ErrorCode::ParseError, "unknown builtin profile '" + name + "'");
}

namespace {

void check_profile(const HardwareProfile& p) {
  if (!(p.peak_matrix_ops > 0.0) || !(p.peak_vector_ops > 0.0) ||
      !(p.mem_bandwidth_bytes > 0.0))
    raise(ErrorCode::ParseError, "profile rates must be > 0");
  if (p.bytes_per_element != 1 && p.bytes_per_element != 2 &&
      p.bytes_per_element != 4)
    raise(ErrorCode::ParseError, "bytes_per_element must be 1, 2, or 4");
  for (double e :
       {p.efficiency.dense, p.efficiency.depthwise, p.efficiency.elementwise})
    if (!(e > 0.0) || e > 1.0)
      raise(ErrorCode::ParseError, "efficiency values must be in (0,1]");
}

void check_keys(const json& j, std::initializer_list<const char*> keys,
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

}  // namespace

json profile_to_json(const HardwareProfile& p) {
  json fused = json::array();
  for (ActivationKind a : p.fused_activations)
    fused.push_back(arch::activation_name(a));
  return json{{"name", p.name},
              {"peak_matrix_ops", p.peak_matrix_ops},
              {"peak_vector_ops", p.peak_vector_ops},
              {"mem_bandwidth_bytes", p.mem_bandwidth_bytes},
              {"bytes_per_element", p.bytes_per_element},
              {"fused_activations", std::move(fused)},
              {"efficiency",
               {{"dense", p.efficiency.dense},
                {"depthwise", p.efficiency.depthwise},
                {"elementwise", p.efficiency.elementwise}}}};
}

HardwareProfile profile_from_json(const json& j) {
  check_keys(j,
             {"name", "peak_matrix_ops", "peak_vector_ops",
              "mem_bandwidth_bytes", "bytes_per_element", "fused_activations",
              "efficiency"},
             "profile");
  HardwareProfile p;
  try {
    p.name = j.at("name").get<std::string>();
    p.peak_matrix_ops = j.at("peak_matrix_ops").get<double>();
    p.peak_vector_ops = j.at("peak_vector_ops").get<double>();
    p.mem_bandwidth_bytes = j.at("mem_bandwidth_bytes").get<double>();
    p.bytes_per_element = j.at("bytes_per_element").get<int>();
    for (const json& a : j.at("fused_activations"))
      p.fused_activations.insert(
          arch::activation_from_name(a.get<std::string>()));
    const json& eff = j.at("efficiency");
    check_keys(eff, {"dense", "depthwise", "elementwise"}, "efficiency");
    p.efficiency.dense = eff.at("dense").get<double>();
    p.efficiency.depthwise = eff.at("depthwise").get<double>();
    p.efficiency.elementwise = eff.at("elementwise").get<double>();
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError, std::string("profile: ") + e.what());
  }
  check_profile(p);
  return p;
}

HardwareProfile load_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    raise(ErrorCode::ParseError, "cannot open profile file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError, "profile file '" + path + "': " + e.what());
  }
  return profile_from_json(j);
}

void save_profile_file(const HardwareProfile& profile, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    raise(ErrorCode::ParseError, "cannot write profile file '" + path + "'");
  out << profile_to_json(profile).dump(2) << "\n";
}

}  // namespace accelscale::cost
