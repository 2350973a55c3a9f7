// Copyright 2026 The excl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "excl/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "excl/errors.hpp"

namespace excl::io {

namespace {

int line_of_byte(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

json parse_file(const std::string& path, std::string* raw_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "", "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string raw = ss.str();
  if (raw_out) *raw_out = raw;
  try {
    return json::parse(raw);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path, line_of_byte(raw, e.byte), "", e.what());
  }
}

const json& require(const json& j, const std::string& key, const std::string& path,
                    const std::string& context) {
  if (!j.contains(key)) {
    throw ParseError(path, 0, context.empty() ? key : context + "." + key, "missing field");
  }
  return j.at(key);
}

double require_number(const json& j, const std::string& key, const std::string& path,
                      const std::string& context) {
  const json& v = require(j, key, path, context);
  if (!v.is_number()) {
    throw ParseError(path, 0, context.empty() ? key : context + "." + key, "expected a number");
  }
  return v.get<double>();
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j, const std::string& path,
                               const std::string& field) {
  if (!j.is_array() || j.empty()) throw ParseError(path, 0, field, "expected a matrix (array of rows)");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j.at(0).size());
  ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw ParseError(path, 0, field + "[" + std::to_string(r) + "]", "ragged matrix row");
    }
    for (int c = 0; c < cols; ++c) {
      const json& cell = row.at(c);
      if (!cell.is_array() || cell.size() != 2 || !cell.at(0).is_number() ||
          !cell.at(1).is_number()) {
        throw ParseError(path, 0,
                         field + "[" + std::to_string(r) + "][" + std::to_string(c) + "]",
                         "expected an [re, im] pair");
      }
      m(r, c) = cd(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  return m;
}

LoadedEnsemble read_ensemble_file(const std::string& path) {
  const json j = parse_file(path, nullptr);
  const int dim = static_cast<int>(require_number(j, "dim", path, ""));
  if (dim < 1) throw ParseError(path, 0, "dim", "dimension must be positive");
  const bool subnormalized = j.value("subnormalized", false);
  const json& states = require(j, "states", path, "");
  if (!states.is_array() || states.empty()) {
    throw ParseError(path, 0, "states", "expected a nonempty array");
  }

  std::vector<HermitianMatrix> mats;
  std::vector<double> probs;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::string ctx = "states[" + std::to_string(i) + "]";
    const json& s = states.at(i);
    const json& mj = require(s, "matrix", path, ctx);
    ComplexMatrix m = matrix_from_json(mj, path, ctx + ".matrix");
    if (m.rows() != dim || m.cols() != dim) {
      throw ParseError(path, 0, ctx + ".matrix",
                       "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                           ", expected " + std::to_string(dim) + "x" + std::to_string(dim));
    }
    try {
      mats.emplace_back(m);
    } catch (const NotHermitian& e) {
      throw ParseError(path, 0, ctx + ".matrix", e.what());
    }
    probs.push_back(s.contains("prob") ? require_number(s, "prob", path, ctx) : -1.0);
    labels.push_back(s.value("label", std::to_string(i + 1)));
  }

  LoadedEnsemble out;
  out.subnormalized = subnormalized;
  try {
    if (subnormalized) {
      out.weighted = OperatorSet::make(std::move(mats), std::move(labels));
    } else {
      for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] < 0.0) {
          throw ParseError(path, 0, "states[" + std::to_string(i) + "].prob", "missing field");
        }
      }
      out.ensemble = Ensemble::make(std::move(mats), std::move(probs), std::move(labels));
      out.weighted = out.ensemble->weighted_operators();
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(path, 0, "states", e.what());
  }
  return out;
}

Measurement read_measurement_file(const std::string& path) {
  const json j = parse_file(path, nullptr);
  const int dim = static_cast<int>(require_number(j, "dim", path, ""));
  const bool has_inconclusive = j.value("has_inconclusive", false);
  const json& elements = require(j, "elements", path, "");
  if (!elements.is_array() || elements.empty()) {
    throw ParseError(path, 0, "elements", "expected a nonempty array");
  }
  std::vector<HermitianMatrix> mats;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const std::string ctx = "elements[" + std::to_string(i) + "]";
    ComplexMatrix m =
        matrix_from_json(require(elements.at(i), "matrix", path, ctx), path, ctx + ".matrix");
    if (m.rows() != dim || m.cols() != dim) {
      throw ParseError(path, 0, ctx + ".matrix", "element dimension mismatch");
    }
    try {
      mats.emplace_back(m);
    } catch (const NotHermitian& e) {
      throw ParseError(path, 0, ctx + ".matrix", e.what());
    }
  }
  try {
    return Measurement::make(std::move(mats), has_inconclusive);
  } catch (const Error& e) {
    throw ParseError(path, 0, "elements", e.what());
  }
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) {
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json matrix_to_json(const HermitianMatrix& m) { return matrix_to_json(m.mat()); }

namespace {

void dump_value(const json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(depth + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + nlohmann::json(key).dump() + ": ";
        dump_value(value, out, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Rows of numbers / [re, im] pairs stay on one line; anything
      // deeper goes one element per line.
      bool flat = true;
      for (const auto& v : j) {
        if (v.is_object()) flat = false;
        if (v.is_array()) {
          for (const auto& w : v) {
            if (w.is_structured()) flat = false;
          }
        }
      }
      if (flat && j.size() <= 64) {
        out += "[";
        bool first = true;
        for (const auto& v : j) {
          if (!first) out += ", ";
          first = false;
          dump_value(v, out, depth);
        }
        out += "]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_value(v, out, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) throw Error("refusing to serialize a non-finite number");
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const json& j) {
  std::string out;
  dump_value(j, out, 0);
  out += "\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace excl::io
