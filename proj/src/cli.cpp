#include "tgeo/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tgeo/error.hpp"
#include "tgeo/euclidean.hpp"
#include "tgeo/gram.hpp"
#include "tgeo/io.hpp"
#include "tgeo/point.hpp"
#include "tgeo/sampling.hpp"
#include "tgeo/sphere.hpp"
#include "tgeo/tolerance.hpp"
#include "tgeo/tube.hpp"

namespace tgeo {
namespace {

using ordered_json = nlohmann::ordered_json;

struct CommandResult {
  std::string text;
  int exit_code = 0;
};

std::vector<long long> parse_integer_list(const std::string& text, const std::string& flag) {
  std::vector<long long> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::size_t end = comma == std::string::npos ? text.size() : comma;
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, value);
    if (ec != std::errc() || ptr != text.data() + end)
      throw Error(flag + ": cannot parse '" + text.substr(pos, end - pos) + "' as an integer");
    out.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string lower_extension(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

WorldFunction load_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw Error(cfg.command + " needs --input");
  if (lower_extension(cfg.input) == ".json") {
    if (cfg.values) throw Error("--values applies to matrix (CSV) input only");
    PointCloudInput cloud = load_point_cloud_json(cfg.input);
    if (cfg.generator) {
      cloud.spec.kind = *cfg.generator;
      if (cloud.spec.kind != GeneratorKind::pseudo_euclidean) cloud.spec.signature.clear();
    }
    if (cfg.signature) {
      cloud.spec.signature.clear();
      for (long long v : parse_integer_list(*cfg.signature, "--signature"))
        cloud.spec.signature.push_back(static_cast<int>(v));
    }
    if (cfg.dim && *cfg.dim != cloud.spec.dimension)
      throw Error("--dim " + std::to_string(*cfg.dim) + " does not match the input dimension " +
                  std::to_string(cloud.spec.dimension));
    return make_world_function(cloud.spec, cloud.points);
  }
  if (cfg.generator || cfg.signature || cfg.dim)
    throw Error("--generator/--dim/--signature reinterpret point clouds; matrix input carries no coordinates");
  return load_world_function(cfg.input, cfg.values);
}

std::string bool_name(bool v) { return v ? "true" : "false"; }

std::string klass_name(LengthClass k) {
  switch (k) {
    case LengthClass::real: return "real";
    case LengthClass::null: return "null";
    case LengthClass::imaginary: return "imaginary";
  }
  throw InternalError("unhandled length class");
}

std::string segment_class_name(SegmentClass c) {
  switch (c) {
    case SegmentClass::segment: return "segment";
    case SegmentClass::ray_beyond_p1: return "ray_beyond_p1";
    case SegmentClass::ray_beyond_p0: return "ray_beyond_p0";
    case SegmentClass::interior_violation: return "interior_violation";
    case SegmentClass::exterior: return "exterior";
  }
  throw InternalError("unhandled segment class");
}

std::string condition_name(StructureCondition c) {
  switch (c) {
    case StructureCondition::none: return "none";
    case StructureCondition::rank: return "rank";
    case StructureCondition::sigma_form: return "sigma_form";
    case StructureCondition::uniqueness: return "uniqueness";
  }
  throw InternalError("unhandled structure condition");
}

std::string degeneracy_name(DegeneracyClass c) {
  switch (c) {
    case DegeneracyClass::nondegenerate: return "nondegenerate";
    case DegeneracyClass::degenerate: return "degenerate";
    case DegeneracyClass::ultradegenerate: return "ultradegenerate";
  }
  throw InternalError("unhandled degeneracy class");
}

std::string joined_ids(std::span<const PointId> ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(ids[i].index);
  }
  return s;
}

ordered_json id_array(std::span<const PointId> ids) {
  ordered_json a = ordered_json::array();
  for (PointId p : ids) a.push_back(p.index);
  return a;
}

ordered_json matrix_rows(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

void append_coordinate_table(std::string& csv, const Eigen::MatrixXd& coords) {
  csv += "point";
  for (Eigen::Index j = 0; j < coords.cols(); ++j) csv += ",z" + std::to_string(j);
  csv += '\n';
  for (Eigen::Index i = 0; i < coords.rows(); ++i) {
    csv += std::to_string(i);
    for (Eigen::Index j = 0; j < coords.cols(); ++j) csv += ',' + format_double(coords(i, j));
    csv += '\n';
  }
}

std::string dump_json(const ordered_json& doc) { return doc.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// classify: Gram determinant series over point subsets
// ---------------------------------------------------------------------------

CommandResult cmd_classify(const RunConfig& cfg) {
  const WorldFunction wf = load_input(cfg);
  TolerancePolicy tol;
  tol.rel_eps = cfg.rel_eps;
  const Eigen::Index count = wf.size();
  constexpr std::uint64_t kFullEnumerationCap = 10000;

  std::string rows_csv = "order,points,f,length,klass\n";
  std::string summary_csv = "order,subsets,zero,positive,negative\n";
  ordered_json jorders = ordered_json::array();

  for (int order : cfg.orders) {
    if (order < 0) throw Error("classify: orders must be >= 0");
    if (order > count - 1)
      throw Error("classify: order " + std::to_string(order) + " needs " +
                  std::to_string(order + 1) + " points, input has " + std::to_string(count));
    const int k = order + 1;

    std::vector<std::vector<Eigen::Index>> subsets;
    const std::uint64_t total = combination_count(count, k);
    const bool sampled = total > kFullEnumerationCap;
    if (sampled) {
      SplitMix64 rng{cfg.seed + static_cast<std::uint64_t>(order)};
      subsets.reserve(kFullEnumerationCap);
      for (std::uint64_t i = 0; i < kFullEnumerationCap; ++i)
        subsets.push_back(sample_subset(rng, count, k));
    } else {
      std::vector<Eigen::Index> c = first_combination(k);
      do subsets.push_back(c);
      while (next_combination(c, count));
    }

    std::uint64_t zero = 0, positive = 0, negative = 0;
    ordered_json jrows = ordered_json::array();
    std::vector<PointId> pts(static_cast<std::size_t>(k));
    for (const auto& subset : subsets) {
      for (std::size_t i = 0; i < subset.size(); ++i) pts[i] = PointId{subset[i]};
      const FiniteSigmaSpace fs = extract_finite_subspace(wf, pts);
      const GramDet det = gram_det(fs);
      const LengthValue len = classify_length(det, tol);
      switch (len.klass) {
        case LengthClass::null: ++zero; break;
        case LengthClass::real: ++positive; break;
        case LengthClass::imaginary: ++negative; break;
      }
      rows_csv += std::to_string(order) + ',' + joined_ids(pts) + ',' + format_double(det.value) +
                  ',' + format_double(len.magnitude) + ',' + klass_name(len.klass) + '\n';
      ordered_json jr;
      jr["points"] = id_array(pts);
      jr["f"] = det.value;
      jr["length"] = len.magnitude;
      jr["klass"] = klass_name(len.klass);
      jrows.push_back(std::move(jr));
    }

    summary_csv += std::to_string(order) + ',' + std::to_string(subsets.size()) + ',' +
                   std::to_string(zero) + ',' + std::to_string(positive) + ',' +
                   std::to_string(negative) + '\n';
    ordered_json jo;
    jo["order"] = order;
    jo["sampled"] = sampled;
    jo["rows"] = std::move(jrows);
    jo["summary"] = {{"subsets", subsets.size()},
                     {"zero", zero},
                     {"positive", positive},
                     {"negative", negative}};
    jorders.push_back(std::move(jo));
  }

  CommandResult res;
  if (cfg.format == "json") {
    ordered_json doc;
    doc["command"] = "classify";
    doc["orders"] = std::move(jorders);
    res.text = dump_json(doc);
  } else {
    res.text = rows_csv + '\n' + summary_csv;
  }
  return res;
}

// ---------------------------------------------------------------------------
// tube: membership scan over all points, first-order location when possible
// ---------------------------------------------------------------------------

std::vector<PointId> basis_points(const RunConfig& cfg, const WorldFunction& wf,
                                  std::size_t min_size) {
  if (cfg.basis.size() < min_size)
    throw Error(cfg.command + " needs --basis with at least " + std::to_string(min_size) +
                " point indices");
  std::vector<PointId> pts;
  pts.reserve(cfg.basis.size());
  for (Eigen::Index idx : cfg.basis) {
    if (idx < 0 || idx >= wf.size())
      throw Error("--basis: point index " + std::to_string(idx) + " outside 0.." +
                  std::to_string(wf.size() - 1));
    pts.push_back(PointId{idx});
  }
  return pts;
}

CommandResult cmd_tube(const RunConfig& cfg) {
  const WorldFunction wf = load_input(cfg);
  TolerancePolicy tol;
  tol.rel_eps = cfg.rel_eps;
  const std::vector<PointId> bpts = basis_points(cfg, wf, 1);
  const TubeBasis basis(wf, bpts, tol);
  const std::vector<PointId> all = index_points(wf.size());
  const std::vector<TubeMembershipReport> scan = tube_scan(basis, all, tol);

  std::vector<std::string> location(scan.size());
  if (basis.order() == 1) {
    for (std::size_t i = 0; i < all.size(); ++i) {
      try {
        const SegmentFactors f = first_order_locate(wf, bpts[0], bpts[1], all[i], tol);
        location[i] = segment_class_name(f.classification);
      } catch (const Error&) {
        location[i] = "";  // indefinite sigma around this point, no location
      }
    }
  }

  CommandResult res;
  if (cfg.format == "json") {
    ordered_json doc;
    doc["command"] = "tube";
    doc["basis"] = id_array(bpts);
    doc["order"] = basis.order();
    doc["f"] = basis.determinant();
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < scan.size(); ++i) {
      ordered_json r;
      r["point"] = scan[i].point.index;
      r["residual"] = scan[i].residual;
      r["member"] = scan[i].member;
      r["classification"] = location[i];
      rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    res.text = dump_json(doc);
  } else {
    std::string csv = "point,residual,member,classification\n";
    for (std::size_t i = 0; i < scan.size(); ++i)
      csv += std::to_string(scan[i].point.index) + ',' + format_double(scan[i].residual) + ',' +
             bool_name(scan[i].member) + ',' + location[i] + '\n';
    res.text = std::move(csv);
  }
  return res;
}

// ---------------------------------------------------------------------------
// section: sigma-profile slice of a tube through a member point
// ---------------------------------------------------------------------------

CommandResult cmd_section(const RunConfig& cfg) {
  const WorldFunction wf = load_input(cfg);
  TolerancePolicy tol;
  tol.rel_eps = cfg.rel_eps;
  const std::vector<PointId> bpts = basis_points(cfg, wf, 1);
  if (!cfg.at) throw Error("section needs --at with the member point index");
  if (*cfg.at < 0 || *cfg.at >= wf.size())
    throw Error("--at: point index " + std::to_string(*cfg.at) + " outside 0.." +
                std::to_string(wf.size() - 1));
  const TubeBasis basis(wf, bpts, tol);
  const std::vector<PointId> all = index_points(wf.size());
  const std::vector<PointId> section = tube_section(basis, PointId{*cfg.at}, all, tol);

  CommandResult res;
  if (cfg.format == "json") {
    ordered_json doc;
    doc["command"] = "section";
    doc["basis"] = id_array(bpts);
    doc["at"] = *cfg.at;
    doc["section"] = id_array(section);
    res.text = dump_json(doc);
  } else {
    std::string csv = "point\n";
    for (PointId p : section) csv += std::to_string(p.index) + '\n';
    res.text = std::move(csv);
  }
  return res;
}

// ---------------------------------------------------------------------------
// degeneracy: triangle-inequality census of a point pair's segment
// ---------------------------------------------------------------------------

CommandResult cmd_degeneracy(const RunConfig& cfg) {
  const WorldFunction wf = load_input(cfg);
  TolerancePolicy tol;
  tol.rel_eps = cfg.rel_eps;
  const std::vector<PointId> bpts = basis_points(cfg, wf, 2);
  if (bpts.size() != 2) throw Error("degeneracy needs --basis with exactly two point indices");
  const std::vector<PointId> all = index_points(wf.size());
  const DegeneracyReport rep = degeneracy_report(wf, bpts[0], bpts[1], all, tol);

  CommandResult res;
  if (cfg.format == "json") {
    ordered_json doc;
    doc["command"] = "degeneracy";
    doc["basis"] = id_array(bpts);
    doc["verdict"] = degeneracy_name(rep.verdict);
    doc["interior_violations"] = rep.interior_violations;
    doc["on_segment"] = rep.on_segment;
    doc["outside"] = rep.outside;
    doc["non_endpoint_on_segment"] = rep.non_endpoint_on_segment;
    res.text = dump_json(doc);
  } else {
    res.text =
        "verdict,interior_violations,on_segment,outside,non_endpoint_on_segment\n" +
        degeneracy_name(rep.verdict) + ',' + std::to_string(rep.interior_violations) + ',' +
        std::to_string(rep.on_segment) + ',' + std::to_string(rep.outside) + ',' +
        std::to_string(rep.non_endpoint_on_segment) + '\n';
  }
  return res;
}

// ---------------------------------------------------------------------------
// embed-check: structure detection (with --order) or flat embedding
// ---------------------------------------------------------------------------

CommandResult embed_structure(const RunConfig& cfg, const WorldFunction& wf,
                              const TolerancePolicy& tol) {
  if (*cfg.structure_order < 1) throw Error("embed-check needs --order >= 1");
  const std::vector<PointId> all = index_points(wf.size());
  const EmbeddingReport rep =
      euclidean_structure_check(wf, all, *cfg.structure_order, tol, cfg.seed);

  CommandResult res;
  res.exit_code = rep.has_structure ? 0 : 1;
  const std::string verdict = rep.has_structure ? "euclidean_structure" : "no_structure";

  if (cfg.format == "json") {
    ordered_json doc;
    doc["command"] = "embed-check";
    doc["mode"] = "structure";
    doc["verdict"] = verdict;
    doc["failing_condition"] = condition_name(rep.failing_condition);
    doc["max_residual"] = rep.max_residual;
    doc["witness"] = id_array(rep.witness);
    doc["basis"] = id_array(rep.basis);
    ordered_json sig = ordered_json::array();
    for (Eigen::Index j = 0; j < rep.axis_signature.size(); ++j)
      sig.push_back(static_cast<int>(rep.axis_signature(j)));
    doc["axis_signature"] = std::move(sig);
    if (rep.has_structure) doc["coordinates"] = matrix_rows(rep.coordinates);
    res.text = dump_json(doc);
  } else {
    std::string sig;
    for (Eigen::Index j = 0; j < rep.axis_signature.size(); ++j) {
      if (j) sig += ' ';
      sig += std::to_string(static_cast<int>(rep.axis_signature(j)));
    }
    std::string csv = "verdict,failing_condition,max_residual,witness,basis,axis_signature\n";
    csv += verdict + ',' + condition_name(rep.failing_condition) + ',' +
           format_double(rep.max_residual) + ',' + joined_ids(rep.witness) + ',' +
           joined_ids(rep.basis) + ',' + sig + '\n';
    if (rep.has_structure) {
      csv += '\n';
      append_coordinate_table(csv, rep.coordinates);
    }
    res.text = std::move(csv);
  }
  return res;
}

CommandResult embed_flat(const RunConfig& cfg, const WorldFunction& wf,
                         const TolerancePolicy& tol) {
  const std::vector<PointId> all = index_points(wf.size());
  const FiniteSigmaSpace fs = extract_finite_subspace(wf, all);
  const FlatEmbedding emb = isometric_embed_finite(fs, tol);

  CommandResult res;
  res.exit_code = emb.embeddable ? 0 : 1;
  const std::string verdict = emb.embeddable ? "embeddable" : "not_embeddable";

  if (cfg.format == "json") {
    ordered_json doc;
    doc["command"] = "embed-check";
    doc["mode"] = "flat";
    doc["verdict"] = verdict;
    doc["embeddable_dim"] = emb.dim;
    doc["min_eigenvalue"] = emb.min_eigenvalue;
    doc["max_roundtrip_error"] = emb.max_roundtrip_error;
    if (emb.negative_sigma_witness) {
      doc["negative_sigma_witness"] =
          ordered_json::array({emb.negative_sigma_witness->first.index,
                               emb.negative_sigma_witness->second.index});
    }
    if (emb.embeddable) doc["coordinates"] = matrix_rows(emb.coordinates);
    res.text = dump_json(doc);
  } else {
    std::string witness;
    if (emb.negative_sigma_witness)
      witness = std::to_string(emb.negative_sigma_witness->first.index) + ' ' +
                std::to_string(emb.negative_sigma_witness->second.index);
    std::string csv =
        "verdict,embeddable_dim,min_eigenvalue,max_roundtrip_error,negative_sigma_witness\n";
    csv += verdict + ',' + std::to_string(emb.dim) + ',' + format_double(emb.min_eigenvalue) +
           ',' + format_double(emb.max_roundtrip_error) + ',' + witness + '\n';
    if (emb.embeddable) {
      csv += '\n';
      append_coordinate_table(csv, emb.coordinates);
    }
    res.text = std::move(csv);
  }
  return res;
}

CommandResult cmd_embed_check(const RunConfig& cfg) {
  const WorldFunction wf = load_input(cfg);
  TolerancePolicy tol;
  tol.rel_eps = cfg.rel_eps;
  return cfg.structure_order ? embed_structure(cfg, wf, tol) : embed_flat(cfg, wf, tol);
}

// ---------------------------------------------------------------------------
// sphere-demo: intrinsic metric vs the closed-form great-circle length
// ---------------------------------------------------------------------------

Vec3 random_unit_vector(SplitMix64& rng) {
  const double z = rng.real(-1.0, 1.0);
  const double phi = rng.real(0.0, 2.0 * std::numbers::pi);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Vec3(r * std::cos(phi), r * std::sin(phi), z);
}

CommandResult cmd_sphere_demo(const RunConfig& cfg) {
  if (cfg.pairs < 1) throw Error("sphere-demo needs --pairs >= 1");
  if (cfg.csamples < 1) throw Error("sphere-demo needs --csamples >= 1");
  if (cfg.steps < 16) throw Error("sphere-demo needs --steps >= 16");

  SplitMix64 rng{cfg.seed};
  std::string csv = "ax,ay,az,bx,by,bz,cx,cy,cz,l_min,closed_form,abs_error\n";
  ordered_json jrows = ordered_json::array();

  for (int p = 0; p < cfg.pairs; ++p) {
    Vec3 a = random_unit_vector(rng);
    Vec3 b = random_unit_vector(rng);
    while ((a - b).norm() < 1e-3) b = random_unit_vector(rng);

    const std::vector<Vec3> cs = default_c_candidates(a, b, cfg.csamples);
    const IntrinsicDistance best = intrinsic_metric(a, b, cs, cfg.steps);
    const double closed = great_circle_distance(a, b);
    const double err = std::abs(best.length - closed);

    for (double v : {a.x(), a.y(), a.z(), b.x(), b.y(), b.z(), best.best_c.x(), best.best_c.y(),
                     best.best_c.z(), best.length, closed, err})
      csv += format_double(v) + ',';
    csv.back() = '\n';

    ordered_json jr;
    jr["a"] = {a.x(), a.y(), a.z()};
    jr["b"] = {b.x(), b.y(), b.z()};
    jr["best_c"] = {best.best_c.x(), best.best_c.y(), best.best_c.z()};
    jr["l_min"] = best.length;
    jr["closed_form"] = closed;
    jr["abs_error"] = err;
    jrows.push_back(std::move(jr));
  }

  CommandResult res;
  if (cfg.format == "json") {
    ordered_json doc;
    doc["command"] = "sphere-demo";
    doc["pairs"] = std::move(jrows);
    res.text = dump_json(doc);
  } else {
    res.text = std::move(csv);
  }
  return res;
}

// ---------------------------------------------------------------------------

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw Error("cannot open " + cfg.out.string() + " for writing");
  f << text;
  if (!f) throw Error("write to " + cfg.out.string() + " failed");
}

CommandResult dispatch(const RunConfig& cfg) {
  if (cfg.command == "classify") return cmd_classify(cfg);
  if (cfg.command == "tube") return cmd_tube(cfg);
  if (cfg.command == "section") return cmd_section(cfg);
  if (cfg.command == "degeneracy") return cmd_degeneracy(cfg);
  if (cfg.command == "embed-check") return cmd_embed_check(cfg);
  if (cfg.command == "sphere-demo") return cmd_sphere_demo(cfg);
  throw InternalError("unhandled command " + cfg.command);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  RunConfig cfg;
  std::string values_text;
  std::string generator_text;
  std::string signature_text;
  std::string orders_text;
  std::string basis_text;
  long long dim_arg = -1;
  long long at_arg = -1;
  int structure_order_arg = -1;
  std::string input_text;
  std::string out_text;

  CLI::App app{"Numerical toolkit for world-function metric geometry"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input", input_text, "Point-cloud JSON or sigma/rho matrix CSV");
    if (needs_input) in->required();
    sub->add_option("--values", values_text, "Matrix CSV content kind")
        ->check(CLI::IsMember({"sigma", "rho"}));
    sub->add_option("--generator", generator_text,
                    "Reinterpret a point cloud under this generator")
        ->check(CLI::IsMember({"euclidean", "pseudo_euclidean", "sphere_chordal",
                               "sphere_intrinsic"}));
    sub->add_option("--dim", dim_arg, "Assert the coordinate dimension of the input");
    sub->add_option("--signature", signature_text,
                    "Comma-separated +1/-1 list for pseudo_euclidean");
    sub->add_option("--tol", cfg.rel_eps, "Relative tolerance for zero classification");
    sub->add_option("--seed", cfg.seed, "Seed for any sampled selection");
    sub->add_option("--out", out_text, "Output file (stdout when absent)");
    sub->add_option("--format", cfg.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* classify = app.add_subcommand(
      "classify", "Tabulate Gram determinants and lengths over point subsets");
  add_common(classify, true);
  classify->add_option("--order", orders_text, "Comma-separated list of orders");

  CLI::App* tube = app.add_subcommand(
      "tube", "Scan tube membership over all points of the input");
  add_common(tube, true);
  tube->add_option("--basis", basis_text, "Comma-separated basis point indices")->required();

  CLI::App* section = app.add_subcommand(
      "section", "List the tube section through a member point");
  add_common(section, true);
  section->add_option("--basis", basis_text, "Comma-separated basis point indices")->required();
  section->add_option("--at", at_arg, "Member point the section passes through")->required();

  CLI::App* degeneracy = app.add_subcommand(
      "degeneracy", "Triangle-inequality census of a point pair's segment");
  add_common(degeneracy, true);
  degeneracy->add_option("--basis", basis_text, "Two comma-separated end point indices")
      ->required();

  CLI::App* embed = app.add_subcommand(
      "embed-check", "Test for Euclidean structure or flat embeddability");
  add_common(embed, true);
  embed->add_option("--order", structure_order_arg,
                    "Structure dimension; omit to run the flat-embedding test");

  CLI::App* sphere = app.add_subcommand(
      "sphere-demo", "Compare the intrinsic sphere metric against the closed form");
  add_common(sphere, false);
  sphere->add_option("--pairs", cfg.pairs, "Number of random point pairs");
  sphere->add_option("--csamples", cfg.csamples, "Third-point sample count");
  sphere->add_option("--steps", cfg.steps, "Quadrature steps per curve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.input = input_text;
    cfg.out = out_text;
    if (!values_text.empty())
      cfg.values = values_text == "sigma" ? TableValues::sigma : TableValues::rho;
    if (!generator_text.empty()) cfg.generator = parse_generator_kind(generator_text);
    if (!signature_text.empty()) cfg.signature = signature_text;
    if (dim_arg >= 0) cfg.dim = static_cast<Eigen::Index>(dim_arg);
    if (at_arg >= 0 || section->count("--at") > 0) cfg.at = static_cast<Eigen::Index>(at_arg);
    if (structure_order_arg >= 0 || embed->count("--order") > 0)
      cfg.structure_order = structure_order_arg;
    if (!orders_text.empty())
      for (long long v : parse_integer_list(orders_text, "--order"))
        cfg.orders.push_back(static_cast<int>(v));
    if (!basis_text.empty())
      for (long long v : parse_integer_list(basis_text, "--basis"))
        cfg.basis.push_back(static_cast<Eigen::Index>(v));

    const CommandResult res = dispatch(cfg);
    emit(cfg, res.text);
    return res.exit_code;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace tgeo
