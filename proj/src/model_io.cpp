#include "respond/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "respond/error.hpp"

namespace respond {

namespace {

using json = nlohmann::json;

// Forward iterator over the document that reports how many bytes the parser
// has pulled, so SAX events can be mapped back to source lines.
class CountingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  CountingIterator(const char* p, std::size_t* consumed) : p_(p), consumed_(consumed) {}
  reference operator*() const { return *p_; }
  CountingIterator& operator++() {
    ++p_;
    ++*consumed_;
    return *this;
  }
  CountingIterator operator++(int) {
    CountingIterator old = *this;
    ++*this;
    return old;
  }
  bool operator==(const CountingIterator& other) const { return p_ == other.p_; }
  bool operator!=(const CountingIterator& other) const { return p_ != other.p_; }

 private:
  const char* p_;
  std::size_t* consumed_;
};

// 1-based line of the last non-blank character before `offset`.
int line_at(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  while (offset > 0 && std::isspace(static_cast<unsigned char>(text[offset - 1]))) --offset;
  if (offset > 0) --offset;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Builds the DOM while recording the line of every value by JSON pointer.
class LocatingSax : public nlohmann::json_sax<json> {
 public:
  LocatingSax(json& root, std::string_view text, const std::size_t* consumed)
      : dom_(root, false), text_(text), consumed_(consumed) {}

  std::map<std::string, int> lines;

  bool null() override { return scalar(), dom_.null(); }
  bool boolean(bool v) override { return scalar(), dom_.boolean(v); }
  bool number_integer(number_integer_t v) override { return scalar(), dom_.number_integer(v); }
  bool number_unsigned(number_unsigned_t v) override { return scalar(), dom_.number_unsigned(v); }
  bool number_float(number_float_t v, const string_t& s) override { return scalar(), dom_.number_float(v, s); }
  bool string(string_t& v) override { return scalar(), dom_.string(v); }
  bool binary(binary_t& v) override { return scalar(), dom_.binary(v); }
  bool start_object(std::size_t n) override {
    record();
    frames_.push_back({false, 0, {}});
    return dom_.start_object(n);
  }
  bool key(string_t& k) override {
    frames_.back().key = k;
    return dom_.key(k);
  }
  bool end_object() override {
    frames_.pop_back();
    advance();
    return dom_.end_object();
  }
  bool start_array(std::size_t n) override {
    record();
    frames_.push_back({true, 0, {}});
    return dom_.start_array(n);
  }
  bool end_array() override {
    frames_.pop_back();
    advance();
    return dom_.end_array();
  }
  bool parse_error(std::size_t position, const std::string& token, const nlohmann::detail::exception& e) override {
    error_line = line_at(text_, position);
    error_message = e.what();
    return dom_.parse_error(position, token, e);
  }

  int error_line = 0;
  std::string error_message = "malformed JSON";

 private:
  struct Frame {
    bool array;
    std::size_t index;
    std::string key;
  };

  std::string pointer() const {
    std::string p;
    for (const Frame& f : frames_) p += "/" + (f.array ? std::to_string(f.index) : f.key);
    return p;
  }
  void record() { lines.emplace(pointer(), line_at(text_, *consumed_)); }
  void advance() {
    if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
  }
  void scalar() {
    record();
    advance();
  }

  nlohmann::detail::json_sax_dom_parser<json> dom_;
  std::string_view text_;
  const std::size_t* consumed_;
  std::vector<Frame> frames_;
};

class Reader {
 public:
  Reader(const std::map<std::string, int>& lines) : lines_(lines) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    throw Error(ErrorCode::SchemaError, "line " + std::to_string(line(pointer)) + ": " +
                                            (pointer.empty() ? "document" : pointer) + ": " + message);
  }

  int line(std::string pointer) const {
    for (;;) {
      const auto it = lines_.find(pointer);
      if (it != lines_.end()) return it->second;
      if (pointer.empty()) return 1;
      pointer.erase(pointer.rfind('/'));
    }
  }

  const json& member(const json& object, const std::string& pointer, const std::string& key) const {
    const auto it = object.find(key);
    if (it == object.end()) fail(pointer, "missing required key \"" + key + "\"");
    return *it;
  }

  double number(const json& v, const std::string& pointer) const {
    if (!v.is_number()) fail(pointer, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(pointer, "expected a finite number");
    return x;
  }

  RVector vector(const json& v, const std::string& pointer, Eigen::Index n) const {
    if (!v.is_array()) fail(pointer, "expected an array of numbers");
    if (static_cast<Eigen::Index>(v.size()) != n) {
      fail(pointer, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
    }
    RVector out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      out(i) = number(v[static_cast<std::size_t>(i)], pointer + "/" + std::to_string(i));
    }
    return out;
  }

  RMatrix matrix(const json& v, const std::string& pointer, Eigen::Index n) const {
    if (!v.is_array()) fail(pointer, "expected an array of rows");
    if (static_cast<Eigen::Index>(v.size()) != n) {
      fail(pointer, "expected " + std::to_string(n) + " rows, got " + std::to_string(v.size()));
    }
    RMatrix out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      out.row(i) = vector(v[static_cast<std::size_t>(i)], pointer + "/" + std::to_string(i), n).transpose();
    }
    return out;
  }

  void only_keys(const json& object, const std::string& pointer, std::initializer_list<const char*> allowed) const {
    for (auto it = object.begin(); it != object.end(); ++it) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; })) {
        fail(pointer + "/" + it.key(), "unknown key \"" + it.key() + "\"");
      }
    }
  }

 private:
  const std::map<std::string, int>& lines_;
};

}  // namespace

VibronicModel parse_model(std::string_view text) {
  json root;
  std::size_t consumed = 0;
  LocatingSax sax(root, text, &consumed);
  const CountingIterator first(text.data(), &consumed);
  const CountingIterator last(text.data() + text.size(), &consumed);
  bool ok = false;
  try {
    ok = json::sax_parse(first, last, &sax);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, "line " + std::to_string(std::max(sax.error_line, 1)) + ": " + e.what());
  }
  if (!ok) {
    throw Error(ErrorCode::SchemaError, "line " + std::to_string(std::max(sax.error_line, 1)) + ": " + sax.error_message);
  }

  const Reader r(sax.lines);
  if (!root.is_object()) r.fail("", "expected an object");
  r.only_keys(root, "", {"omega_ref", "modes", "states", "dipoles", "gamma_deph", "gamma_relax"});

  const double omega_ref = root.contains("omega_ref") ? r.number(root["omega_ref"], "/omega_ref") : 1.0;
  if (!(omega_ref > 0.0)) r.fail("/omega_ref", "must be positive");

  const json& modes_json = r.member(root, "", "modes");
  if (!modes_json.is_number_integer() || modes_json.get<long long>() < 1) r.fail("/modes", "expected a positive integer");
  const auto n = static_cast<Eigen::Index>(modes_json.get<long long>());

  const json& states_json = r.member(root, "", "states");
  if (!states_json.is_array() || states_json.empty()) r.fail("/states", "expected a non-empty array of states");

  std::vector<ElectronicState> states;
  for (std::size_t k = 0; k < states_json.size(); ++k) {
    const std::string p = "/states/" + std::to_string(k);
    const json& s = states_json[k];
    if (!s.is_object()) r.fail(p, "expected an object");
    r.only_keys(s, p, {"epsilon", "omega", "delta", "duschinsky"});
    ElectronicState state;
    state.energy = s.contains("epsilon") ? r.number(s["epsilon"], p + "/epsilon") : 0.0;
    state.frequencies = r.vector(r.member(s, p, "omega"), p + "/omega", n);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!(state.frequencies(j) > 0.0)) r.fail(p + "/omega/" + std::to_string(j), "frequencies must be positive");
    }
    state.displacements = r.vector(r.member(s, p, "delta"), p + "/delta", n);
    state.duschinsky =
        s.contains("duschinsky") ? r.matrix(s["duschinsky"], p + "/duschinsky", n) : RMatrix::Identity(n, n);
    try {
      orthogonal_log(state.duschinsky);
    } catch (const Error& e) {
      r.fail(p + "/duschinsky", e.what());
    }
    if (k == 0) {
      if (state.displacements.cwiseAbs().maxCoeff() != 0.0) r.fail(p + "/delta", "ground state must be undisplaced");
      if ((state.duschinsky - RMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-12) {
        r.fail(p + "/duschinsky", "ground state Duschinsky matrix must be the identity");
      }
    }
    states.push_back(std::move(state));
  }

  const auto ne = static_cast<Eigen::Index>(states.size());
  const RMatrix dipoles = r.matrix(r.member(root, "", "dipoles"), "/dipoles", ne);
  if ((dipoles - dipoles.transpose()).cwiseAbs().maxCoeff() > 1e-12) r.fail("/dipoles", "must be symmetric");

  const double gamma_deph = root.contains("gamma_deph") ? r.number(root["gamma_deph"], "/gamma_deph") : 0.0;
  const double gamma_relax = root.contains("gamma_relax") ? r.number(root["gamma_relax"], "/gamma_relax") : 0.0;
  if (gamma_deph < 0.0) r.fail("/gamma_deph", "must be non-negative");
  if (gamma_relax < 0.0) r.fail("/gamma_relax", "must be non-negative");

  try {
    return VibronicModel(std::move(states), dipoles, gamma_deph, gamma_relax, omega_ref);
  } catch (const Error& e) {
    r.fail("", e.what());
  }
}

VibronicModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::SchemaError, "line 0: cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str());
}

std::string serialize_model(const VibronicModel& model) {
  const auto vec = [](const RVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  const auto mat = [&](const RMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vec(m.row(i).transpose()));
    return rows;
  };
  json doc;
  doc["omega_ref"] = model.omega_ref();
  doc["modes"] = model.modes();
  doc["states"] = json::array();
  for (const ElectronicState& s : model.states()) {
    doc["states"].push_back({{"epsilon", s.energy},
                             {"omega", vec(s.frequencies)},
                             {"delta", vec(s.displacements)},
                             {"duschinsky", mat(s.duschinsky)}});
  }
  doc["dipoles"] = mat(model.dipoles());
  doc["gamma_deph"] = model.gamma_deph();
  doc["gamma_relax"] = model.gamma_relax();
  return doc.dump(2) + "\n";
}

}  // namespace respond
