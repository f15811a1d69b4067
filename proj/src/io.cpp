#include "cone/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace cone {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void save_dataset(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_dataset: cannot open " + path);
  const int d = dataset.box().dim();
  out << "stage,decision";
  for (int k = 1; k <= d; ++k) out << ",y_" << k;
  out << ",value\n";
  for (const Observation& obs : dataset.observations()) {
    out << obs.stage << ',' << obs.decision;
    for (int k = 0; k < d; ++k) out << ',' << fmt_double(obs.context[k]);
    out << ',' << fmt_double(obs.value) << '\n';
  }
  out.close();

  nlohmann::json meta;
  meta["n_decisions"] = dataset.n_decisions();
  meta["lower"] = std::vector<double>(dataset.box().lower().data(),
                                      dataset.box().lower().data() + d);
  meta["upper"] = std::vector<double>(dataset.box().upper().data(),
                                      dataset.box().upper().data() + d);
  std::ofstream mout(path + ".meta.json");
  if (!mout) throw std::runtime_error("save_dataset: cannot open " + path + ".meta.json");
  mout << meta.dump(2) << '\n';
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_dataset: cannot open " + path);

  std::string header;
  if (!std::getline(in, header)) {
    throw std::runtime_error("load_dataset: empty file " + path);
  }
  int n_cols = 1;
  for (char ch : header) n_cols += ch == ',';
  const int d = n_cols - 3;
  if (d < 1 || header.rfind("stage,decision,", 0) != 0) {
    throw std::runtime_error("load_dataset: unexpected header in " + path);
  }

  struct Row {
    int decision;
    Eigen::VectorXd y;
    double value;
  };
  std::vector<Row> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    Row row;
    row.y.resize(d);
    std::getline(ss, cell, ',');  // stage; reassigned on append
    std::getline(ss, cell, ',');
    row.decision = std::stoi(cell);
    for (int k = 0; k < d; ++k) {
      std::getline(ss, cell, ',');
      row.y[k] = std::stod(cell);
    }
    std::getline(ss, cell, ',');
    row.value = std::stod(cell);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("load_dataset: no observations in " + path);

  int n_decisions = 0;
  Eigen::VectorXd lo, hi;
  const std::string meta_path = path + ".meta.json";
  if (std::filesystem::exists(meta_path)) {
    std::ifstream min(meta_path);
    nlohmann::json meta;
    min >> meta;
    n_decisions = meta.at("n_decisions").get<int>();
    const auto lov = meta.at("lower").get<std::vector<double>>();
    const auto hiv = meta.at("upper").get<std::vector<double>>();
    lo = Eigen::Map<const Eigen::VectorXd>(lov.data(), static_cast<Eigen::Index>(lov.size()));
    hi = Eigen::Map<const Eigen::VectorXd>(hiv.data(), static_cast<Eigen::Index>(hiv.size()));
  } else {
    lo = rows.front().y;
    hi = rows.front().y;
    for (const Row& row : rows) {
      lo = lo.cwiseMin(row.y);
      hi = hi.cwiseMax(row.y);
      n_decisions = std::max(n_decisions, row.decision + 1);
    }
    // Data ranges give a degenerate box when a coordinate never varies;
    // pad both ends so normalization stays defined.
    for (int k = 0; k < d; ++k) {
      const double pad = std::max(1e-9, 1e-9 * std::abs(hi[k] - lo[k]));
      lo[k] -= pad;
      hi[k] += pad;
    }
    n_decisions = std::max(n_decisions, 2);
  }

  Dataset dataset(ContextBox(lo, hi), n_decisions);
  for (const Row& row : rows) {
    dataset.append(row.decision, row.y, row.value);
  }
  return dataset;
}

}  // namespace cone
