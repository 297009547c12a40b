#include "rsp/instance.hpp"

#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "rsp/errors.hpp"
#include "rsp/types.hpp"

namespace rsp {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& msg) const {
    std::ostringstream os;
    os << source_;
    if (node.IsDefined() && node.Mark().line >= 0)
      os << ":" << node.Mark().line + 1 << ":" << node.Mark().column + 1;
    os << ": " << field << ": " << msg;
    throw InputError(os.str());
  }

  YAML::Node require(const YAML::Node& root, const char* key) const {
    YAML::Node n = root[key];
    if (!n) fail(root, key, "missing required key");
    return n;
  }

  std::string scalar(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(n, field, "expected a scalar");
    return n.Scalar();
  }

  Rational rational(const YAML::Node& n, const std::string& field) const {
    try {
      return parse_rational(scalar(n, field));
    } catch (const InputError& e) {
      fail(n, field, e.what());
    }
  }

  std::size_t label_index(const ChoiceUniverse& u, const YAML::Node& n, const std::string& field) const {
    auto label = scalar(n, field);
    auto idx = u.find(label);
    if (!idx) fail(n, field, "unknown label \"" + label + "\"");
    return *idx;
  }

  std::vector<std::uint8_t> bit_row(const YAML::Node& n, const std::string& field) const {
    std::vector<std::uint8_t> bits;
    if (n.IsScalar()) {
      for (char c : n.Scalar()) {
        if (c == '0' || c == '1')
          bits.push_back(static_cast<std::uint8_t>(c - '0'));
        else if (c != ' ')
          fail(n, field, "bit rows may only contain 0 and 1");
      }
    } else if (n.IsSequence()) {
      for (std::size_t i = 0; i < n.size(); ++i) {
        auto s = scalar(n[i], field + "[" + std::to_string(i) + "]");
        if (s != "0" && s != "1") fail(n[i], field, "bit rows may only contain 0 and 1");
        bits.push_back(static_cast<std::uint8_t>(s[0] - '0'));
      }
    } else {
      fail(n, field, "expected a bit string or a list of bits");
    }
    return bits;
  }

 private:
  std::string source_;
};

std::string field_at(const char* name, std::size_t i) { return std::string(name) + "[" + std::to_string(i) + "]"; }

}  // namespace

Instance parse_instance(std::string_view text, std::string_view source) {
  Parser p(source);
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw InputError(std::string(source) + ":" + std::to_string(e.mark.line + 1) + ":" +
                     std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) p.fail(root, "<root>", "expected a mapping with universe, problems, types, probabilities");

  // universe
  YAML::Node un = p.require(root, "universe");
  if (!un.IsSequence()) p.fail(un, "universe", "expected a list of labels");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < un.size(); ++i) labels.push_back(p.scalar(un[i], field_at("universe", i)));
  ChoiceUniverse universe;
  try {
    universe = ChoiceUniverse(labels);
  } catch (const InputError& e) {
    p.fail(un, "universe", e.what());
  }

  // problems, remembering the member order as written
  YAML::Node pn = p.require(root, "problems");
  if (!pn.IsSequence() || pn.size() == 0) p.fail(pn, "problems", "expected a nonempty list of problems");
  std::vector<ChoiceProblem> problems;
  std::vector<std::vector<std::size_t>> written;
  for (std::size_t j = 0; j < pn.size(); ++j) {
    const auto field = field_at("problems", j);
    if (!pn[j].IsSequence()) p.fail(pn[j], field, "expected a list of labels");
    ChoiceProblem prob;
    for (std::size_t i = 0; i < pn[j].size(); ++i)
      prob.members.push_back(p.label_index(universe, pn[j][i], field + "[" + std::to_string(i) + "]"));
    written.push_back(prob.members);
    problems.push_back(std::move(prob));
  }
  IndexLayout base;
  try {
    base = build_layout(universe, problems);
  } catch (const InputError& e) {
    p.fail(pn, "problems", e.what());
  }

  bool set_valued = false;
  if (YAML::Node sv = root["set_valued"]) {
    auto s = p.scalar(sv, "set_valued");
    if (s == "true")
      set_valued = true;
    else if (s != "false")
      p.fail(sv, "set_valued", "expected true or false");
  }

  std::optional<LiftedLayout> lifted;
  if (set_valued) lifted = lift_layout(universe, base.problems());
  const IndexLayout& layout = set_valued ? lifted->layout : base;

  // types
  YAML::Node tn = p.require(root, "types");
  TypeSource source_kind;
  std::optional<RationalTypeSet> types;
  if (tn.IsScalar()) {
    const auto& kw = tn.Scalar();
    if (kw == "linear-orders") {
      source_kind = TypeSource::linear_orders;
      auto base_types = types_from_linear_orders(base);
      types = set_valued ? lift_choice_types(base_types, *lifted) : std::move(base_types);
    } else if (kw == "weak-orders") {
      if (!set_valued) p.fail(tn, "types", "weak-orders requires set_valued: true");
      source_kind = TypeSource::weak_orders;
      types = correspondence_types_from_weak_orders(*lifted);
    } else {
      p.fail(tn, "types", "expected linear-orders, weak-orders or a list of bit rows");
    }
  } else if (tn.IsSequence()) {
    source_kind = TypeSource::explicit_rows;
    std::vector<std::vector<std::uint8_t>> rows;
    for (std::size_t r = 0; r < tn.size(); ++r) {
      auto row = p.bit_row(tn[r], field_at("types", r));
      if (!set_valued && row.size() == layout.dimension()) {
        // Written order -> canonical coordinates.
        std::vector<std::uint8_t> canon(row.size(), 0);
        std::size_t pos = 0;
        for (std::size_t j = 0; j < written.size(); ++j)
          for (auto alt : written[j]) canon[*layout.coordinate(j, alt)] = row[pos++];
        row = std::move(canon);
      }
      try {
        ChoiceTypeVector t{row};
        check_choice_type(t, layout);
      } catch (const InputError& e) {
        p.fail(tn[r], field_at("types", r), e.what());
      }
      rows.push_back(std::move(row));
    }
    if (rows.empty()) p.fail(tn, "types", "no rows given");
    types = types_from_explicit(rows, layout);
  } else {
    p.fail(tn, "types", "expected linear-orders, weak-orders or a list of bit rows");
  }

  // probabilities
  YAML::Node prn = p.require(root, "probabilities");
  if (!prn.IsSequence()) p.fail(prn, "probabilities", "expected one entry per problem");
  if (prn.size() != written.size())
    p.fail(prn, "probabilities",
           "expected " + std::to_string(written.size()) + " entries, got " + std::to_string(prn.size()));

  RationalVector values(layout.dimension());
  if (!set_valued) {
    for (std::size_t j = 0; j < written.size(); ++j) {
      const auto field = field_at("probabilities", j);
      const YAML::Node& row = prn[j];
      if (!row.IsSequence() || row.size() != written[j].size())
        p.fail(row, field, "expected " + std::to_string(written[j].size()) + " probabilities");
      Rational sum = 0;
      for (std::size_t i = 0; i < row.size(); ++i) {
        const auto f = field + "[" + std::to_string(i) + "]";
        Rational q = p.rational(row[i], f);
        if (sgn(q) < 0) p.fail(row[i], f, "negative probability " + to_string(q));
        sum += q;
        values[*layout.coordinate(j, written[j][i])] = q;
      }
      if (sum != 1) p.fail(row, field, "block sum " + to_string(sum) + " != 1");
    }
  } else {
    for (std::size_t j = 0; j < written.size(); ++j) {
      const auto field = field_at("probabilities", j);
      const YAML::Node& row = prn[j];
      if (!row.IsSequence()) p.fail(row, field, "expected a list of {subset, p} entries");
      Rational sum = 0;
      std::vector<bool> seen(layout.dimension(), false);
      for (std::size_t i = 0; i < row.size(); ++i) {
        const auto f = field + "[" + std::to_string(i) + "]";
        const YAML::Node& entry = row[i];
        if (!entry.IsMap()) p.fail(entry, f, "expected {subset: [...], p: ...}");
        YAML::Node sn = p.require(entry, "subset");
        if (!sn.IsSequence()) p.fail(sn, f + ".subset", "expected a list of labels");
        std::vector<std::size_t> members;
        for (std::size_t m = 0; m < sn.size(); ++m)
          members.push_back(p.label_index(universe, sn[m], f + ".subset"));
        SubsetMask mask = mask_of(members);
        if (static_cast<std::size_t>(std::popcount(mask)) != members.size())
          p.fail(sn, f + ".subset", "repeated label");
        std::size_t coord = 0;
        try {
          coord = lifted->coordinate(j, mask);
        } catch (const InputError& e) {
          p.fail(sn, f + ".subset", e.what());
        }
        if (seen[coord]) p.fail(sn, f + ".subset", "subset listed twice");
        seen[coord] = true;
        YAML::Node qn = p.require(entry, "p");
        Rational q = p.rational(qn, f + ".p");
        if (sgn(q) < 0) p.fail(qn, f + ".p", "negative probability " + to_string(q));
        values[coord] = q;
        sum += q;
      }
      if (sum != 1) p.fail(row, field, "block sum " + to_string(sum) + " != 1");
    }
  }
  StochasticChoiceVector pi = validate_pi(std::move(values), layout);

  return Instance{std::string(source), universe,      std::move(base), set_valued,
                  source_kind,         std::move(lifted), std::move(pi), std::move(*types)};
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open instance file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), path.string());
}

std::string type_source_name(TypeSource s) {
  switch (s) {
    case TypeSource::linear_orders: return "linear-orders";
    case TypeSource::weak_orders: return "weak-orders";
    case TypeSource::explicit_rows: return "explicit";
  }
  return "explicit";
}

std::string canonical_form(const Instance& inst) {
  std::ostringstream os;
  os << "rsp-instance 1\n";
  os << "universe";
  for (const auto& l : inst.universe.labels()) os << ' ' << l.size() << ':' << l;
  os << '\n';
  for (const auto& prob : inst.base_layout.problems()) {
    os << "problem";
    for (auto m : prob.members) os << ' ' << m;
    os << '\n';
  }
  os << "set_valued " << (inst.set_valued ? 1 : 0) << '\n';
  os << "pi";
  for (const auto& q : inst.pi.values) os << ' ' << to_string(q);
  os << '\n';
  os << "types " << inst.types.size() << '\n';
  for (const auto& t : inst.types.types()) {
    for (auto b : t.bits) os << int(b);
    os << '\n';
  }
  return os.str();
}

std::string instance_digest(const Instance& inst) {
  const std::string text = canonical_form(inst);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 digest failed");
  std::string hex = "sha256:";
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace rsp
