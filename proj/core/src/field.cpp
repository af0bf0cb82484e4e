#include "ssfem/field.hpp"

#include "ssfem/errors.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ssfem {

StochasticField::StochasticField(std::shared_ptr<const pce::PceBasis> basis, std::size_t num_nodes, FieldRole role)
    : basis_(std::move(basis)), num_nodes_(num_nodes), role_(role) {
  if (!basis_) throw std::invalid_argument("StochasticField: null basis");
  coeffs_.assign(basis_->size() * num_nodes_, 0.0);
}

StochasticField::StochasticField(std::shared_ptr<const pce::PceBasis> basis, std::size_t num_nodes, FieldRole role,
                                 std::vector<double> coeffs)
    : basis_(std::move(basis)), num_nodes_(num_nodes), role_(role), coeffs_(std::move(coeffs)) {
  if (!basis_) throw std::invalid_argument("StochasticField: null basis");
  if (coeffs_.size() != basis_->size() * num_nodes_)
    throw std::invalid_argument("StochasticField: coefficient array does not match terms x nodes");
}

std::vector<double> StochasticField::evaluate(std::span<const double> xi) const {
  const auto psi = basis_->eval_all(xi);
  std::vector<double> out(num_nodes_, 0.0);
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const auto r = row(j);
    for (std::size_t n = 0; n < num_nodes_; ++n) out[n] += r[n] * psi[j];
  }
  return out;
}

void StochasticField::validate() const {
  for (double v : coeffs_)
    if (!std::isfinite(v)) throw std::invalid_argument("StochasticField: non-finite coefficient");
  if (role_ == FieldRole::InputCoefficient)
    for (double v : row(0))
      if (!(v > 0.0)) throw std::invalid_argument("StochasticField: input coefficient mean must be positive at every node");
}

void write_field_csv(std::ostream& out, const std::vector<mesh::Point>& nodes, const StochasticField& field) {
  if (nodes.size() != field.num_nodes()) throw std::invalid_argument("write_field_csv: node count mismatch");
  const auto prec = out.precision();
  out << std::setprecision(15);
  out << "node,x,y";
  for (std::size_t j = 0; j < field.num_terms(); ++j) out << ",c" << j;
  out << '\n';
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    out << n << ',' << nodes[n][0] << ',' << nodes[n][1];
    for (std::size_t j = 0; j < field.num_terms(); ++j) out << ',' << field(j, n);
    out << '\n';
  }
  out.precision(prec);
}

void write_field_csv(const std::string& path, const std::vector<mesh::Point>& nodes, const StochasticField& field) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_field_csv(out, nodes, field);
  if (!out) throw IoError("failed writing '" + path + "'");
}

void write_nodal_csv(const std::string& path, const std::vector<mesh::Point>& nodes, std::span<const double> values) {
  if (nodes.size() != values.size()) throw std::invalid_argument("write_nodal_csv: node count mismatch");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << std::setprecision(15) << "node,x,y,c0\n";
  for (std::size_t n = 0; n < nodes.size(); ++n)
    out << n << ',' << nodes[n][0] << ',' << nodes[n][1] << ',' << values[n] << '\n';
  if (!out) throw IoError("failed writing '" + path + "'");
}

FieldCsv read_field_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw IoError("field csv: empty file");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  if (header.size() < 4 || header[0] != "node" || header[1] != "x" || header[2] != "y")
    throw IoError("field csv: header must start with node,x,y and have at least one coefficient column");
  for (std::size_t j = 3; j < header.size(); ++j)
    if (header[j] != "c" + std::to_string(j - 3))
      throw IoError("field csv: header column " + std::to_string(j) + " should be c" + std::to_string(j - 3));

  FieldCsv out;
  out.num_terms = header.size() - 3;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> values;
    try {
      while (std::getline(ss, cell, ',')) values.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw IoError("field csv: line " + std::to_string(lineno) + ": unparsable number");
    }
    if (values.size() != header.size())
      throw IoError("field csv: line " + std::to_string(lineno) + ": expected " + std::to_string(header.size()) + " columns");
    if (values[0] != static_cast<double>(rows.size()))
      throw IoError("field csv: line " + std::to_string(lineno) + ": node ids must run 0..N-1 in order");
    rows.push_back(std::move(values));
  }
  const std::size_t n_nodes = rows.size();
  out.nodes.reserve(n_nodes);
  out.coeffs.assign(out.num_terms * n_nodes, 0.0);
  for (std::size_t n = 0; n < n_nodes; ++n) {
    out.nodes.push_back({rows[n][1], rows[n][2]});
    for (std::size_t j = 0; j < out.num_terms; ++j) out.coeffs[j * n_nodes + n] = rows[n][3 + j];
  }
  return out;
}

FieldCsv read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open field file '" + path + "'");
  return read_field_csv(in);
}

StochasticField load_field_csv(const std::string& path, std::shared_ptr<const pce::PceBasis> basis, FieldRole role) {
  auto csv = read_field_csv(path);
  if (csv.num_terms != basis->size())
    throw IoError("field csv '" + path + "' has " + std::to_string(csv.num_terms) + " coefficient columns, basis has " +
                  std::to_string(basis->size()) + " terms");
  return StochasticField(std::move(basis), csv.nodes.size(), role, std::move(csv.coeffs));
}

} // namespace ssfem
