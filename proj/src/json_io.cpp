#include "runitary/json_io.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "runitary/channel.hpp"

namespace runitary {

namespace {

using nlohmann::json;

Complex parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("expected a complex number as [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Matrix parse_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty matrix");
  const size_t rows = j.size();
  size_t cols = 0;
  Matrix m;
  for (size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.empty()) throw ParseError("expected a non-empty matrix row");
    if (i == 0) {
      cols = row.size();
      m.resize(rows, cols);
    } else if (row.size() != cols) {
      throw ParseError("ragged matrix rows");
    }
    for (size_t k = 0; k < cols; ++k) m(i, k) = parse_complex(row[k]);
  }
  return m;
}

Vector parse_cvector(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty complex vector");
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(i) = parse_complex(j[i]);
  return v;
}

int parse_positive_int(const json& j, const char* name) {
  if (!j.is_number_integer() || j.get<int64_t>() < 1)
    throw ParseError(std::string(name) + " must be a positive integer");
  return static_cast<int>(j.get<int64_t>());
}

json parse_root(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("invalid JSON");
  if (!j.is_object()) throw ParseError("expected a JSON object");
  return j;
}

void write_complex(std::string& out, const Complex& z) {
  out += '[';
  out += format_double(z.real());
  out += ',';
  out += format_double(z.imag());
  out += ']';
}

void write_matrix(std::string& out, const Matrix& m) {
  out += '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += ',';
    out += '[';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      write_complex(out, m(i, j));
    }
    out += ']';
  }
  out += ']';
}

void write_real_array(std::string& out, const std::vector<double>& v) {
  out += '[';
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  out += ']';
}

// Finite doubles only; infinities (unfilled residuals) become null.
void write_double_or_null(std::string& out, double x) {
  if (std::isfinite(x))
    out += format_double(x);
  else
    out += "null";
}

void write_decomposition_body(std::string& out, const RuDecomposition& dec) {
  out += "{\"probs\":";
  write_real_array(out, dec.probs);
  out += ",\"unitaries\":[";
  for (int i = 0; i < dec.size(); ++i) {
    if (i) out += ',';
    write_matrix(out, dec.unitaries[i]);
  }
  out += "]}";
}

std::string escape_json(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(static_cast<unsigned char>(c)));
      out += buf;
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace

KrausChannel parse_channel_json(const std::string& text, const ToleranceConfig& tol) {
  const json j = parse_root(text);
  KrausChannel ch;
  ch.d_in = parse_positive_int(j.value("d_in", json()), "d_in");
  ch.d_out = parse_positive_int(j.value("d_out", json()), "d_out");

  const bool has_kraus = j.contains("kraus");
  const bool has_choi = j.contains("choi");
  if (has_kraus == has_choi)
    throw ParseError("channel needs exactly one of \"kraus\" or \"choi\"");

  if (has_kraus) {
    const json& ops = j.at("kraus");
    if (!ops.is_array() || ops.empty()) throw ParseError("\"kraus\" must be a non-empty array");
    for (const json& op : ops) {
      Matrix k = parse_matrix(op);
      if (k.rows() != ch.d_out || k.cols() != ch.d_in)
        throw ParseError("Kraus operator shape does not match d_out x d_in");
      ch.ops.push_back(std::move(k));
    }
    check_channel(ch, tol);
    return ch;
  }

  ChoiOperator r;
  r.d_in = ch.d_in;
  r.d_out = ch.d_out;
  r.mat = parse_matrix(j.at("choi"));
  if (r.mat.rows() != static_cast<Eigen::Index>(ch.d_in) * ch.d_out || r.mat.rows() != r.mat.cols())
    throw ParseError("Choi matrix shape does not match (d_out*d_in)^2");
  check_choi(r, tol);
  return choi_to_canonical_kraus(r, tol);
}

RankOnePovm parse_povm_json(const std::string& text) {
  const json j = parse_root(text);
  const int r = parse_positive_int(j.value("r", json()), "r");
  if (!j.contains("vectors") || !j.at("vectors").is_array() || j.at("vectors").empty())
    throw ParseError("\"vectors\" must be a non-empty array");
  std::vector<Vector> vecs;
  for (const json& v : j.at("vectors")) {
    Vector a = parse_cvector(v);
    if (a.size() != r) throw ParseError("POVM vector length does not match r");
    vecs.push_back(std::move(a));
  }
  return make_povm(r, std::move(vecs));
}

RuDecomposition parse_decomposition_json(const std::string& text, const ToleranceConfig& tol) {
  const json j = parse_root(text);
  if (!j.contains("probs") || !j.at("probs").is_array() || j.at("probs").empty())
    throw ParseError("\"probs\" must be a non-empty array");
  if (!j.contains("unitaries") || !j.at("unitaries").is_array())
    throw ParseError("\"unitaries\" must be an array");
  RuDecomposition dec;
  for (const json& p : j.at("probs")) {
    if (!p.is_number()) throw ParseError("probabilities must be numbers");
    dec.probs.push_back(p.get<double>());
  }
  for (const json& u : j.at("unitaries")) dec.unitaries.push_back(parse_matrix(u));
  if (dec.probs.size() != dec.unitaries.size())
    throw ParseError("probs and unitaries must have the same length");

  const Eigen::Index d = dec.unitaries[0].rows();
  double sum = 0.0;
  for (int i = 0; i < dec.size(); ++i) {
    if (dec.probs[i] < -tol.eps_eq)
      throw std::invalid_argument("decomposition: negative probability");
    sum += dec.probs[i];
    const Matrix& u = dec.unitaries[i];
    if (u.rows() != d || u.cols() != d)
      throw std::invalid_argument("decomposition: unitaries must share one square shape");
    if ((u.adjoint() * u - Matrix::Identity(d, d)).norm() > tol.eps_unitary)
      throw std::invalid_argument("decomposition: operator is not unitary");
  }
  if (std::abs(sum - 1.0) > tol.eps_eq)
    throw std::invalid_argument("decomposition: probabilities do not sum to 1");
  return dec;
}

std::string channel_to_json(const KrausChannel& ch) {
  std::string out = "{\"d_in\":" + std::to_string(ch.d_in) +
                    ",\"d_out\":" + std::to_string(ch.d_out) + ",\"kraus\":[";
  for (int j = 0; j < ch.num_ops(); ++j) {
    if (j) out += ',';
    write_matrix(out, ch.ops[j]);
  }
  out += "]}";
  return out;
}

std::string povm_to_json(const RankOnePovm& p) {
  std::string out = "{\"r\":" + std::to_string(p.r) + ",\"vectors\":[";
  for (int i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += '[';
    for (int j = 0; j < p.r; ++j) {
      if (j) out += ',';
      write_complex(out, p.vectors[i](j));
    }
    out += ']';
  }
  out += "]}";
  return out;
}

std::string decomposition_to_json(const RuDecomposition& dec) {
  std::string out;
  write_decomposition_body(out, dec);
  return out;
}

std::string search_report_to_json(const SearchReport& report) {
  std::string out = "{\"status\":\"";
  switch (report.status) {
    case SearchStatus::found:
      out += "found";
      break;
    case SearchStatus::not_found:
      out += "not_found";
      break;
    case SearchStatus::not_unital:
      out += "not_unital";
      break;
  }
  out += "\",\"cardinality_bound_low\":" + std::to_string(report.cardinality_bound_low);
  out += ",\"cardinality_bound_high\":" + std::to_string(report.cardinality_bound_high);
  out += ",\"k\":";
  out += report.decomposition ? std::to_string(report.decomposition->size()) : "null";
  out += ",\"entropy_bits\":";
  out += format_double(report.entropy_bits);
  out += ",\"residual\":";
  write_double_or_null(out, report.residual);
  out += ",\"best_objective\":";
  write_double_or_null(out, report.best_objective);
  out += ",\"objective_trace\":";
  write_real_array(out, report.objective_trace);
  out += ",\"decomposition\":";
  if (report.decomposition)
    write_decomposition_body(out, *report.decomposition);
  else
    out += "null";
  out += '}';
  return out;
}

std::string correction_report_to_json(const CorrectionReport& report) {
  std::string out = "{\"n_trials\":" + std::to_string(report.n_trials);
  out += ",\"worst_fidelity\":";
  out += format_double(report.worst_fidelity);
  out += ",\"mean_fidelity\":";
  out += format_double(report.mean_fidelity);
  out += ",\"max_weight_deviation\":";
  out += format_double(report.max_weight_deviation);
  out += ",\"outcome_frequencies\":";
  write_real_array(out, report.outcome_frequencies);
  out += ",\"expected_probs\":";
  write_real_array(out, report.expected_probs);
  out += '}';
  return out;
}

std::string analysis_to_json(const AnalysisResult& a) {
  std::string out = "{\"rank\":" + std::to_string(a.rank);
  out += ",\"unital\":";
  out += a.unital ? "true" : "false";
  out += ",\"tp\":";
  out += a.tp ? "true" : "false";
  out += ",\"k_low\":" + std::to_string(a.k_low);
  out += ",\"k_high\":" + std::to_string(a.k_high);
  out += ",\"h_bound_bits\":";
  out += format_double(a.h_bound_bits);
  if (!a.note.empty()) out += ",\"note\":\"" + escape_json(a.note) + "\"";
  out += '}';
  return out;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace runitary
