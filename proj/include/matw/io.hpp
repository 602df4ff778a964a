// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

// JSON forms of grids, weights, instances, certificates and sweep configs.
//
//   GridScalar:       {"depth": N, "dim": 1, "values": [w_0, ...]}
//   GridVector:       {"depth": N, "dim": d, "values": [[f_0...], ...]}
//   GridMatrixField:  {"depth": N, "dim": d, "values": [[row-major d*d], ...]}
//   weight file:      GridMatrixField + "metadata": {kind, parameter, seed, eps_pd}
//   instance file:    {"weight": ..., "function": ..., "config": {"c1", "c2"}}

#ifndef MATW_IO_HPP
#define MATW_IO_HPP

#include <string>

#include <json.hpp>

#include "matw/dyadic.hpp"
#include "matw/sparse.hpp"
#include "matw/sweep.hpp"
#include "matw/weights.hpp"

namespace matw {

using Json = nlohmann::ordered_json;

Json to_json(const GridScalar& g);
Json to_json(const GridVector& g);
Json to_json(const GridMatrixField& g);
Json to_json(const MatrixWeight& w);
Json to_json(const StoppingConfig& c);
Json to_json(const ExperimentConfig& c);
Json to_json(const SparseCertificate& c, const MatrixWeight& w, const GridVector& f);

GridScalar grid_scalar_from_json(const Json& j);
GridVector grid_vector_from_json(const Json& j);
GridMatrixField grid_matrix_from_json(const Json& j);
MatrixWeight weight_from_json(const Json& j);
StoppingConfig stopping_config_from_json(const Json& j, int dim);
ExperimentConfig experiment_config_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace matw

#endif  // MATW_IO_HPP
