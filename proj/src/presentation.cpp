#include "pcaag/presentation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json_util.hpp"
#include "pcaag/errors.hpp"

namespace pcaag {

namespace {

using nlohmann::json;

std::string describe(std::size_t i, std::size_t j, int sign) {
  std::ostringstream os;
  os << "(" << i + 1 << "," << j + 1 << "," << (sign > 0 ? "+1" : "-1") << ")";
  return os.str();
}

void check_word_support(const GeneratorWord& w, std::size_t subject, std::size_t n,
                        const std::string& where) {
  for (const auto& l : w) {
    if (l.index >= n) {
      throw IndexViolation(where + ": generator index " + std::to_string(l.index + 1) +
                           " out of range 1.." + std::to_string(n));
    }
    if (l.index <= subject) {
      throw IndexViolation(where + ": word mentions generator " + std::to_string(l.index + 1) +
                           " which is not larger than " + std::to_string(subject + 1));
    }
  }
}

Integer exponent_from_json(const json& v) { return detail::integer_from_json(v); }

json exponent_to_json(const Integer& e) { return detail::integer_to_json(e); }

GeneratorWord word_from_json(const json& v) {
  if (!v.is_array()) throw MalformedDocument("word must be an array of [index, exponent] pairs");
  GeneratorWord w;
  for (const auto& letter : v) {
    if (!letter.is_array() || letter.size() != 2 || !letter[0].is_number_integer()) {
      throw MalformedDocument("word letter must be [index, exponent]");
    }
    auto index = letter[0].get<std::int64_t>();
    if (index < 1) throw IndexViolation("generator index must be >= 1");
    w.push_back(static_cast<std::size_t>(index - 1), exponent_from_json(letter[1]));
  }
  return w;
}

json word_to_json(const GeneratorWord& w) {
  json out = json::array();
  for (const auto& l : w) out.push_back(json::array({l.index + 1, exponent_to_json(l.exponent)}));
  return out;
}

std::size_t index_from_json(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_number_integer()) {
    throw MalformedDocument(std::string("missing integer field '") + key + "'");
  }
  auto v = obj[key].get<std::int64_t>();
  if (v < 1) throw IndexViolation(std::string("field '") + key + "' must be >= 1");
  return static_cast<std::size_t>(v - 1);
}

}  // namespace

PcPresentation::PcPresentation(std::vector<std::int64_t> orders, std::vector<Conjugate> conjugates,
                               std::vector<Power> powers, std::string source_polynomial)
    : orders_(std::move(orders)), source_(std::move(source_polynomial)) {
  const std::size_t n = orders_.size();
  if (n == 0) throw MalformedDocument("presentation needs at least one generator");
  for (std::size_t i = 0; i < n; ++i) {
    if (orders_[i] != kInfinite && orders_[i] < 2) {
      throw MalformedDocument("relative order of generator " + std::to_string(i + 1) +
                              " must be >= 2 or 0 (infinite)");
    }
  }
  conj_pos_.resize(n * n);
  conj_neg_.resize(n * n);
  pow_.resize(n);

  for (auto& c : conjugates) {
    if (c.i >= n || c.j >= n) {
      throw IndexViolation("conjugate relation " + describe(c.i, c.j, c.sign) + " out of range");
    }
    if (c.i >= c.j) {
      throw IndexViolation("conjugate relation " + describe(c.i, c.j, c.sign) + " needs i < j");
    }
    if (c.sign != 1 && c.sign != -1) {
      throw MalformedDocument("conjugate relation sign must be +1 or -1");
    }
    check_word_support(c.word, c.i, n, "conjugate relation " + describe(c.i, c.j, c.sign));
    auto& cell = (c.sign > 0 ? conj_pos_ : conj_neg_)[slot(c.i, c.j)];
    if (cell) throw MalformedDocument("duplicate conjugate relation " + describe(c.i, c.j, c.sign));
    cell = std::move(c.word);
  }
  for (auto& p : powers) {
    if (p.k >= n) throw IndexViolation("power relation index out of range");
    if (orders_[p.k] == kInfinite) {
      throw MalformedDocument("power relation given for infinite generator " +
                              std::to_string(p.k + 1));
    }
    check_word_support(p.word, p.k, n, "power relation " + std::to_string(p.k + 1));
    if (pow_[p.k]) throw MalformedDocument("duplicate power relation " + std::to_string(p.k + 1));
    pow_[p.k] = std::move(p.word);
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!conj_pos_[slot(i, j)]) {
        throw MissingRelation("missing conjugate relation " + describe(i, j, 1));
      }
      if (orders_[i] == kInfinite && !conj_neg_[slot(i, j)]) {
        throw MissingRelation("missing conjugate relation " + describe(i, j, -1));
      }
    }
    if (orders_[i] != kInfinite && !pow_[i]) {
      throw MissingRelation("missing power relation for generator " + std::to_string(i + 1));
    }
  }
}

const GeneratorWord* PcPresentation::conjugate(std::size_t i, std::size_t j, int sign) const {
  const auto& cell = (sign > 0 ? conj_pos_ : conj_neg_).at(slot(i, j));
  return cell ? &*cell : nullptr;
}

const GeneratorWord& PcPresentation::power(std::size_t k) const {
  const auto& cell = pow_.at(k);
  if (!cell) throw IndexViolation("generator " + std::to_string(k + 1) + " has no power relation");
  return *cell;
}

std::vector<PcPresentation::Conjugate> PcPresentation::conjugates() const {
  std::vector<Conjugate> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (const auto& w = conj_pos_[slot(i, j)]) out.push_back({i, j, 1, *w});
      if (const auto& w = conj_neg_[slot(i, j)]) out.push_back({i, j, -1, *w});
    }
  }
  return out;
}

std::vector<PcPresentation::Power> PcPresentation::powers() const {
  std::vector<Power> out;
  for (std::size_t k = 0; k < size(); ++k) {
    if (pow_[k]) out.push_back({k, *pow_[k]});
  }
  return out;
}

bool operator==(const PcPresentation& a, const PcPresentation& b) {
  return a.orders_ == b.orders_ && a.conj_pos_ == b.conj_pos_ && a.conj_neg_ == b.conj_neg_ &&
         a.pow_ == b.pow_ && a.source_ == b.source_;
}

std::size_t hirsch_length(const PcPresentation& p) {
  return static_cast<std::size_t>(
      std::count(p.orders().begin(), p.orders().end(), kInfinite));
}

PcPresentation parse_presentation(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedDocument(std::string("presentation is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw MalformedDocument("presentation document must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    throw MalformedDocument("missing integer field 'n'");
  }
  auto n = doc["n"].get<std::int64_t>();
  if (n < 1) throw MalformedDocument("'n' must be positive");
  if (!doc.contains("orders") || !doc["orders"].is_array()) {
    throw MalformedDocument("missing array field 'orders'");
  }
  const auto& jorders = doc["orders"];
  if (static_cast<std::int64_t>(jorders.size()) != n) {
    throw MalformedDocument("'orders' must have exactly n entries");
  }
  std::vector<std::int64_t> orders;
  for (const auto& o : jorders) {
    if (!o.is_number_integer()) throw MalformedDocument("orders entries must be integers");
    orders.push_back(o.get<std::int64_t>());
  }

  std::vector<PcPresentation::Conjugate> conj;
  if (doc.contains("conj")) {
    if (!doc["conj"].is_array()) throw MalformedDocument("'conj' must be an array");
    for (const auto& e : doc["conj"]) {
      if (!e.is_object()) throw MalformedDocument("conj entries must be objects");
      PcPresentation::Conjugate c;
      c.i = index_from_json(e, "i");
      c.j = index_from_json(e, "j");
      if (!e.contains("sign") || !e["sign"].is_number_integer()) {
        throw MalformedDocument("conj entry needs an integer 'sign'");
      }
      c.sign = e["sign"].get<int>();
      if (!e.contains("word")) throw MalformedDocument("conj entry needs a 'word'");
      c.word = word_from_json(e["word"]);
      conj.push_back(std::move(c));
    }
  }
  std::vector<PcPresentation::Power> pow;
  if (doc.contains("pow")) {
    if (!doc["pow"].is_array()) throw MalformedDocument("'pow' must be an array");
    for (const auto& e : doc["pow"]) {
      if (!e.is_object()) throw MalformedDocument("pow entries must be objects");
      PcPresentation::Power p;
      p.k = index_from_json(e, "k");
      if (!e.contains("word")) throw MalformedDocument("pow entry needs a 'word'");
      p.word = word_from_json(e["word"]);
      pow.push_back(std::move(p));
    }
  }
  std::string source;
  if (doc.contains("meta") && doc["meta"].is_object() && doc["meta"].contains("source_polynomial")) {
    if (!doc["meta"]["source_polynomial"].is_string()) {
      throw MalformedDocument("meta.source_polynomial must be a string");
    }
    source = doc["meta"]["source_polynomial"].get<std::string>();
  }
  return PcPresentation(std::move(orders), std::move(conj), std::move(pow), std::move(source));
}

std::string serialize_presentation(const PcPresentation& p) {
  json doc;
  doc["n"] = p.size();
  doc["orders"] = p.orders();
  json conj = json::array();
  for (const auto& c : p.conjugates()) {
    conj.push_back({{"i", c.i + 1}, {"j", c.j + 1}, {"sign", c.sign}, {"word", word_to_json(c.word)}});
  }
  doc["conj"] = std::move(conj);
  json pow = json::array();
  for (const auto& e : p.powers()) pow.push_back({{"k", e.k + 1}, {"word", word_to_json(e.word)}});
  doc["pow"] = std::move(pow);
  if (!p.source_polynomial().empty()) {
    doc["meta"] = {{"source_polynomial", p.source_polynomial()}};
  }
  return doc.dump(1) + "\n";
}

PcPresentation load_presentation(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open presentation file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_presentation(buf.str());
}

void save_presentation(const PcPresentation& p, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write presentation file " + path.string());
  out << serialize_presentation(p);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace pcaag
