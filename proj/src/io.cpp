// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

#include "matw/io.hpp"

#include <fstream>
#include <sstream>

#include "matw/error.hpp"

namespace matw {

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::kParse, std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return member(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("field '") + key + "': " + e.what());
  }
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return get<T>(j, key);
}

std::vector<double> numbers(const Json& j, std::size_t expected, const char* what) {
  if (!j.is_array() || j.size() != expected)
    fail(ErrorCode::kParse, std::string(what) + ": expected an array of " + std::to_string(expected) + " numbers");
  std::vector<double> out;
  out.reserve(expected);
  for (const Json& v : j) {
    if (!v.is_number()) fail(ErrorCode::kParse, std::string(what) + ": non-numeric entry");
    out.push_back(v.get<double>());
  }
  return out;
}

const Json& values_of(const Json& j, std::size_t cells) {
  const Json& v = member(j, "values");
  if (!v.is_array() || v.size() != cells)
    fail(ErrorCode::kParse, "'values' must hold 2^depth = " + std::to_string(cells) + " cells");
  return v;
}

}  // namespace

Json to_json(const GridScalar& g) {
  return Json{{"depth", g.depth()}, {"dim", 1}, {"values", std::vector<double>(g.values().begin(), g.values().end())}};
}

Json to_json(const GridVector& g) {
  Json values = Json::array();
  for (std::size_t leaf = 0; leaf < g.cells(); ++leaf) {
    const auto c = g.cell(leaf);
    values.push_back(std::vector<double>(c.begin(), c.end()));
  }
  return Json{{"depth", g.depth()}, {"dim", g.dim()}, {"values", std::move(values)}};
}

Json to_json(const GridMatrixField& g) {
  Json values = Json::array();
  for (const Matrix& m : g.values()) values.push_back(std::vector<double>(m.data().begin(), m.data().end()));
  return Json{{"depth", g.depth()}, {"dim", g.dim()}, {"values", std::move(values)}};
}

Json to_json(const MatrixWeight& w) {
  Json j = to_json(w.field());
  const WeightMetadata& m = w.metadata();
  j["metadata"] = Json{{"kind", m.kind}, {"parameter", m.parameter}, {"seed", m.seed}, {"eps_pd", m.eps_pd}};
  return j;
}

Json to_json(const StoppingConfig& c) {
  return Json{{"c1", c.c1},
              {"c2", c.c2},
              {"sparseness_target", c.sparseness_target},
              {"max_generations", c.max_generations},
              {"weak_type_budget", c.weak_type_budget}};
}

Json to_json(const ExperimentConfig& c) {
  return Json{{"kind", std::string(to_string(c.kind))},
              {"dim", c.dim},
              {"depth", c.depth},
              {"parameters", c.parameters},
              {"seeds", c.seeds},
              {"max_iters", c.max_iters},
              {"rel_tol", c.rel_tol},
              {"n_directions", c.n_directions},
              {"c1", c.c1},
              {"c2", c.c2}};
}

GridScalar grid_scalar_from_json(const Json& j) {
  const int depth = get<int>(j, "depth");
  require(depth >= 0 && depth <= kMaxDepth, ErrorCode::kParse, "depth out of range");
  return GridScalar(depth, numbers(values_of(j, leaf_count_at(depth)), leaf_count_at(depth), "values"));
}

GridVector grid_vector_from_json(const Json& j) {
  const int depth = get<int>(j, "depth");
  const int dim = get<int>(j, "dim");
  require(depth >= 0 && depth <= kMaxDepth, ErrorCode::kParse, "depth out of range");
  require(dim >= 1, ErrorCode::kParse, "dim must be positive");
  const Json& v = values_of(j, leaf_count_at(depth));
  std::vector<double> flat;
  flat.reserve(leaf_count_at(depth) * static_cast<std::size_t>(dim));
  for (const Json& cell : v) {
    if (dim == 1 && cell.is_number()) {
      flat.push_back(cell.get<double>());
      continue;
    }
    const auto c = numbers(cell, static_cast<std::size_t>(dim), "vector cell");
    flat.insert(flat.end(), c.begin(), c.end());
  }
  return GridVector(depth, dim, std::move(flat));
}

GridMatrixField grid_matrix_from_json(const Json& j) {
  const int depth = get<int>(j, "depth");
  const int dim = get<int>(j, "dim");
  require(depth >= 0 && depth <= kMaxDepth, ErrorCode::kParse, "depth out of range");
  require(dim >= 1, ErrorCode::kParse, "dim must be positive");
  const Json& v = values_of(j, leaf_count_at(depth));
  std::vector<Matrix> cells;
  cells.reserve(v.size());
  for (const Json& cell : v) {
    if (dim == 1 && cell.is_number()) {
      cells.emplace_back(1, std::vector<double>{cell.get<double>()});
      continue;
    }
    cells.emplace_back(dim, numbers(cell, static_cast<std::size_t>(dim * dim), "matrix cell"));
  }
  return GridMatrixField(depth, dim, std::move(cells));
}

MatrixWeight weight_from_json(const Json& j) {
  WeightMetadata meta;
  if (j.is_object() && j.contains("metadata")) {
    const Json& m = j.at("metadata");
    meta.kind = get_or<std::string>(m, "kind", meta.kind);
    meta.parameter = get_or<double>(m, "parameter", meta.parameter);
    meta.seed = get_or<std::uint64_t>(m, "seed", meta.seed);
    meta.eps_pd = get_or<double>(m, "eps_pd", meta.eps_pd);
  }
  return MatrixWeight(grid_matrix_from_json(j), meta);
}

StoppingConfig stopping_config_from_json(const Json& j, int dim) {
  StoppingConfig c = StoppingConfig::defaults(dim);
  if (j.is_null()) return c;
  c.c1 = get_or<double>(j, "c1", c.c1);
  c.c2 = get_or<double>(j, "c2", c.c2);
  c.sparseness_target = get_or<double>(j, "sparseness_target", c.sparseness_target);
  c.max_generations = get_or<int>(j, "max_generations", c.max_generations);
  c.weak_type_budget = get_or<double>(j, "weak_type_budget", c.weak_type_budget);
  c.validate();
  return c;
}

ExperimentConfig experiment_config_from_json(const Json& j) {
  ExperimentConfig c;
  c.kind = parse_weight_kind(get<std::string>(j, "kind"));
  c.dim = get_or<int>(j, "dim", c.dim);
  c.depth = get_or<int>(j, "depth", c.depth);
  c.parameters = get<std::vector<double>>(j, "parameters");
  c.seeds = get_or<std::vector<std::uint64_t>>(j, "seeds", c.seeds);
  c.max_iters = get_or<int>(j, "max_iters", c.max_iters);
  c.rel_tol = get_or<double>(j, "rel_tol", c.rel_tol);
  c.n_directions = get_or<int>(j, "n_directions", c.n_directions);
  c.c1 = get_or<double>(j, "c1", c.c1);
  c.c2 = get_or<double>(j, "c2", c.c2);
  c.threads = get_or<int>(j, "threads", c.threads);
  c.output = get_or<std::string>(j, "output", c.output);
  c.validate();
  return c;
}

Json to_json(const SparseCertificate& c, const MatrixWeight& w, const GridVector& f) {
  Json nodes = Json::array();
  for (const FamilyNode& n : c.family.nodes) {
    nodes.push_back(Json{{"level", n.interval.level},
                         {"index", n.interval.index},
                         {"parent", n.parent},
                         {"generation", n.generation},
                         {"trigger", std::string(to_string(n.trigger))},
                         {"e_ratio", n.e_ratio},
                         {"type1_fraction", n.type1_fraction},
                         {"type2_fraction", n.type2_fraction},
                         {"s3w_average", n.s3w_average}});
  }
  Json trace_steps = Json::array();
  for (const TraceStep& s : c.trace.steps)
    trace_steps.push_back(Json{{"node", s.node},
                               {"type1_mass", s.type1_mass},
                               {"norm_sum", s.norm_sum},
                               {"hs_sum", s.hs_sum},
                               {"trace_sum", s.trace_sum},
                               {"trace_total", s.trace_total},
                               {"bound", s.bound},
                               {"ok", s.ok}});
  Json weak_steps = Json::array();
  for (const WeakTypeStep& s : c.weak_type.steps)
    weak_steps.push_back(Json{{"node", s.node},
                              {"type2_fraction", s.type2_fraction},
                              {"level_set_fraction", s.level_set_fraction},
                              {"quotient", s.quotient},
                              {"contained", s.contained}});
  return Json{
      {"version", kVersion},
      {"instance",
       Json{{"depth", f.depth()},
            {"dim", f.dim()},
            {"weight_kind", w.metadata().kind},
            {"weight_parameter", w.metadata().parameter},
            {"weight_seed", w.metadata().seed}}},
      {"config", to_json(c.family.config)},
      {"family", Json{{"generations", c.family.generations}, {"size", c.family.nodes.size()}, {"nodes", nodes}}},
      {"sparseness",
       Json{{"ok", c.sparseness.ok}, {"min_ratio", c.sparseness.min_ratio}, {"offending", c.sparseness.offending}}},
      {"domination",
       Json{{"ok", c.domination.ok},
            {"lhs", c.domination.lhs},
            {"s3w", c.domination.s3w},
            {"rhs", c.domination.rhs},
            {"slack", c.domination.slack},
            {"local_violations", c.domination.local_violations}}},
      {"type1_trace",
       Json{{"ok", c.trace.ok},
            {"max_fraction", c.trace.max_fraction},
            {"fraction_bound", c.trace.fraction_bound},
            {"steps", trace_steps}}},
      {"type2_weak",
       Json{{"ok", c.weak_type.ok},
            {"max_quotient", c.weak_type.max_quotient},
            {"max_level_set_quotient", c.weak_type.max_level_set_quotient},
            {"budget", c.family.config.weak_type_budget},
            {"steps", weak_steps}}},
      {"maximality",
       Json{{"ok", c.maximality.ok}, {"checked", c.maximality.checked}, {"violations", c.maximality.violations}}},
      {"all_ok", c.all_ok},
  };
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path + "' for reading");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, "'" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::kIo, "write to '" + path + "' failed");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace matw
