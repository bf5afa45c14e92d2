// Copyright 2026 The cpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cpe/problem_json.hpp"

#include <fstream>
#include <sstream>

#include "cpe/error.hpp"

namespace cpe {

namespace {

using nlohmann::json;

const json& Field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) {
    Fail(ErrorKind::kValidation, std::string("missing field '") + name + "'");
  }
  return *it;
}

double Real(const json& v, const std::string& where) {
  if (!v.is_number()) {
    Fail(ErrorKind::kValidation, "field '" + where + "' must be a number");
  }
  return v.get<double>();
}

std::int64_t Integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) {
    Fail(ErrorKind::kValidation, "field '" + where + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

std::size_t Index(const json& v, const std::string& where) {
  const auto i = Integer(v, where);
  if (i < 0) {
    Fail(ErrorKind::kValidation, "field '" + where + "' must be >= 0");
  }
  return static_cast<std::size_t>(i);
}

const json& Array(const json& v, const std::string& where) {
  if (!v.is_array()) {
    Fail(ErrorKind::kValidation, "field '" + where + "' must be an array");
  }
  return v;
}

Vector RealArray(const json& v, const std::string& where) {
  Vector out;
  const auto& arr = Array(v, where);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(Real(arr[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::pair<std::size_t, std::size_t> LineColumn(const std::string& text,
                                               std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

OracleProblem ProblemFromJson(const json& doc) {
  Require(doc.is_object(), "problem document must be a JSON object");
  const json& type_field = Field(doc, "type");
  Require(type_field.is_string(), "field 'type' must be a string");
  const std::string type = type_field.get<std::string>();

  if (type == "knapsack") {
    KnapsackProblem p;
    const auto& w = Array(Field(doc, "weights"), "weights");
    for (std::size_t i = 0; i < w.size(); ++i) {
      p.weights.push_back(Integer(w[i], "weights[" + std::to_string(i) + "]"));
    }
    p.capacity = Integer(Field(doc, "capacity"), "capacity");
    return OracleProblem(std::move(p));
  }
  if (type == "production") {
    ProductionProblem p;
    const auto& rows = Array(Field(doc, "requirements"), "requirements");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      p.requirements.push_back(
          RealArray(rows[i], "requirements[" + std::to_string(i) + "]"));
    }
    p.limits = RealArray(Field(doc, "limits"), "limits");
    return OracleProblem(std::move(p));
  }
  if (type == "dag_path") {
    DagPathProblem p;
    p.vertex_count = Index(Field(doc, "vertices"), "vertices");
    const auto& edges = Array(Field(doc, "edges"), "edges");
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const std::string where = "edges[" + std::to_string(e) + "]";
      const auto& pair = Array(edges[e], where);
      Require(pair.size() == 2, "field '" + where + "' must be [from, to]");
      p.edges.emplace_back(Index(pair[0], where + "[0]"),
                           Index(pair[1], where + "[1]"));
    }
    p.source = Index(Field(doc, "source"), "source");
    p.sink = Index(Field(doc, "sink"), "sink");
    return OracleProblem(std::move(p));
  }
  if (type == "topk") {
    TopKProblem p;
    p.d = Index(Field(doc, "d"), "d");
    p.k = Index(Field(doc, "k"), "k");
    return OracleProblem(p);
  }
  if (type == "explicit") {
    std::vector<Action> actions;
    const auto& arr = Array(Field(doc, "actions"), "actions");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      actions.emplace_back(
          RealArray(arr[i], "actions[" + std::to_string(i) + "]"));
    }
    return OracleProblem(ExplicitProblem{ActionSet(std::move(actions))});
  }
  Fail(ErrorKind::kValidation, "unknown problem type '" + type + "'");
}

json ProblemToJson(const OracleProblem& problem) {
  json doc;
  doc["type"] = problem.type_name();
  if (const auto* p = problem.get_if<KnapsackProblem>()) {
    doc["weights"] = p->weights;
    doc["capacity"] = p->capacity;
  } else if (const auto* p = problem.get_if<ProductionProblem>()) {
    doc["requirements"] = p->requirements;
    doc["limits"] = p->limits;
  } else if (const auto* p = problem.get_if<DagPathProblem>()) {
    doc["vertices"] = p->vertex_count;
    json edges = json::array();
    for (const auto& [u, v] : p->edges) edges.push_back({u, v});
    doc["edges"] = edges;
    doc["source"] = p->source;
    doc["sink"] = p->sink;
  } else if (const auto* p = problem.get_if<TopKProblem>()) {
    doc["d"] = p->d;
    doc["k"] = p->k;
  } else if (const auto* p = problem.get_if<ExplicitProblem>()) {
    json actions = json::array();
    for (const auto& a : p->actions) actions.push_back(a.coords());
    doc["actions"] = actions;
  }
  return doc;
}

OracleProblem ParseProblem(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = LineColumn(text, e.byte == 0 ? 0 : e.byte - 1);
    Fail(ErrorKind::kValidation, "malformed problem JSON at line " +
                                     std::to_string(line) + ", column " +
                                     std::to_string(column) + ": " + e.what());
  }
  return ProblemFromJson(doc);
}

OracleProblem LoadProblemFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kValidation, "cannot open problem file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseProblem(buffer.str());
  } catch (const Error& e) {
    Fail(e.kind(), path + ": " + e.what());
  }
}

}  // namespace cpe
