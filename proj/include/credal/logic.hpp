#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "credal/errors.hpp"

namespace credal::logic {

/// Entailment is decided by exhaustive world enumeration; this caps the
/// combined atom vocabulary so that 2^n stays a desk-scale number.
inline constexpr std::size_t kMaxEntailmentAtoms = 20;

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
  };
  auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
  if (!head(s.front())) return false;
  for (char c : s.substr(1)) {
    if (!tail(c)) return false;
  }
  return true;
}

/// Ground instance of a unary attribute, rendered `Attr(ind)`.
class Atom {
 public:
  Atom(std::string attribute, std::string individual)
      : attribute_(std::move(attribute)), individual_(std::move(individual)) {
    if (!is_identifier(attribute_) || !is_identifier(individual_)) {
      throw InvalidInputError("atom parts must be identifiers: " + attribute_ + "(" +
                              individual_ + ")");
    }
  }

  const std::string& attribute() const { return attribute_; }
  const std::string& individual() const { return individual_; }
  std::string to_string() const { return attribute_ + "(" + individual_ + ")"; }

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.attribute_ == b.attribute_ && a.individual_ == b.individual_;
  }
  friend bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
  friend bool operator<(const Atom& a, const Atom& b) {
    if (a.attribute_ != b.attribute_) return a.attribute_ < b.attribute_;
    return a.individual_ < b.individual_;
  }

 private:
  std::string attribute_;
  std::string individual_;
};

/// Ground propositional sentence: immutable AST over atoms with
/// not / and / or / implies.  Copies share structure.
class Sentence {
 public:
  enum class Kind { atom, negation, conjunction, disjunction, implication };

  Kind kind() const { return node_->kind; }

  const Atom& atom() const {
    if (node_->kind != Kind::atom) throw InternalError("sentence is not an atom");
    return *node_->atom;
  }

  /// First operand; the only operand of a negation.
  Sentence left() const {
    if (!node_->lhs) throw InternalError("sentence has no operand");
    return Sentence(node_->lhs);
  }

  Sentence right() const {
    if (!node_->rhs) throw InternalError("sentence has no second operand");
    return Sentence(node_->rhs);
  }

  std::set<Atom> vocabulary() const {
    std::set<Atom> out;
    collect(node_.get(), out);
    return out;
  }

  bool operator==(const Sentence& other) const { return equal(node_.get(), other.node_.get()); }
  bool operator!=(const Sentence& other) const { return !(*this == other); }

 private:
  struct Node {
    Kind kind;
    std::optional<Atom> atom;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };
  using NodePtr = std::shared_ptr<const Node>;

  explicit Sentence(NodePtr node) : node_(std::move(node)) {}

  static void collect(const Node* n, std::set<Atom>& out) {
    if (n->kind == Kind::atom) {
      out.insert(*n->atom);
      return;
    }
    if (n->lhs) collect(n->lhs.get(), out);
    if (n->rhs) collect(n->rhs.get(), out);
  }

  static bool equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    if (a->kind == Kind::atom) return *a->atom == *b->atom;
    if (a->kind == Kind::negation) return equal(a->lhs.get(), b->lhs.get());
    return equal(a->lhs.get(), b->lhs.get()) && equal(a->rhs.get(), b->rhs.get());
  }

  NodePtr node_;

  friend Sentence atom(Atom a);
  friend Sentence negation(Sentence s);
  friend Sentence conjunction(Sentence l, Sentence r);
  friend Sentence disjunction(Sentence l, Sentence r);
  friend Sentence implication(Sentence l, Sentence r);
  friend bool evaluate_under(const Sentence&, const std::map<Atom, std::size_t>&,
                             std::uint32_t);
};

inline Sentence atom(Atom a) {
  auto node = std::make_shared<Sentence::Node>();
  node->kind = Sentence::Kind::atom;
  node->atom = std::move(a);
  return Sentence(std::move(node));
}

inline Sentence atom(std::string attribute, std::string individual) {
  return atom(Atom(std::move(attribute), std::move(individual)));
}

inline Sentence negation(Sentence s) {
  auto node = std::make_shared<Sentence::Node>();
  node->kind = Sentence::Kind::negation;
  node->lhs = std::move(s.node_);
  return Sentence(std::move(node));
}

inline Sentence conjunction(Sentence l, Sentence r) {
  auto node = std::make_shared<Sentence::Node>();
  node->kind = Sentence::Kind::conjunction;
  node->lhs = std::move(l.node_);
  node->rhs = std::move(r.node_);
  return Sentence(std::move(node));
}

inline Sentence disjunction(Sentence l, Sentence r) {
  auto node = std::make_shared<Sentence::Node>();
  node->kind = Sentence::Kind::disjunction;
  node->lhs = std::move(l.node_);
  node->rhs = std::move(r.node_);
  return Sentence(std::move(node));
}

inline Sentence implication(Sentence l, Sentence r) {
  auto node = std::make_shared<Sentence::Node>();
  node->kind = Sentence::Kind::implication;
  node->lhs = std::move(l.node_);
  node->rhs = std::move(r.node_);
  return Sentence(std::move(node));
}

/// Total truth assignment over a finite atom vocabulary.
class World {
 public:
  World() = default;
  explicit World(std::map<Atom, bool> assignment) : assignment_(std::move(assignment)) {}

  bool truth(const Atom& a) const {
    auto it = assignment_.find(a);
    if (it == assignment_.end()) {
      throw VocabularyError("atom not assigned by world: " + a.to_string());
    }
    return it->second;
  }

  const std::map<Atom, bool>& assignment() const { return assignment_; }

 private:
  std::map<Atom, bool> assignment_;
};

/// Classical truth-table semantics.  The world must assign every atom of s.
inline bool evaluate(const Sentence& s, const World& w) {
  switch (s.kind()) {
    case Sentence::Kind::atom:
      return w.truth(s.atom());
    case Sentence::Kind::negation:
      return !evaluate(s.left(), w);
    case Sentence::Kind::conjunction:
      return evaluate(s.left(), w) && evaluate(s.right(), w);
    case Sentence::Kind::disjunction:
      return evaluate(s.left(), w) || evaluate(s.right(), w);
    case Sentence::Kind::implication:
      return !evaluate(s.left(), w) || evaluate(s.right(), w);
  }
  throw InternalError("unreachable sentence kind");
}

/// Evaluation against a packed assignment: bit `index[a]` of `bits` is the
/// truth value of atom a.  Backs the enumeration loops below.
inline bool evaluate_under(const Sentence& s, const std::map<Atom, std::size_t>& index,
                           std::uint32_t bits) {
  const Sentence::Node* n = s.node_.get();
  switch (n->kind) {
    case Sentence::Kind::atom: {
      auto it = index.find(*n->atom);
      if (it == index.end()) throw VocabularyError("atom not indexed: " + n->atom->to_string());
      return (bits >> it->second) & 1u;
    }
    case Sentence::Kind::negation:
      return !evaluate_under(Sentence(n->lhs), index, bits);
    case Sentence::Kind::conjunction:
      return evaluate_under(Sentence(n->lhs), index, bits) &&
             evaluate_under(Sentence(n->rhs), index, bits);
    case Sentence::Kind::disjunction:
      return evaluate_under(Sentence(n->lhs), index, bits) ||
             evaluate_under(Sentence(n->rhs), index, bits);
    case Sentence::Kind::implication:
      return !evaluate_under(Sentence(n->lhs), index, bits) ||
             evaluate_under(Sentence(n->rhs), index, bits);
  }
  throw InternalError("unreachable sentence kind");
}

namespace detail {

inline std::map<Atom, std::size_t> index_vocabulary(const std::vector<Sentence>& sentences,
                                                    const Sentence* extra) {
  std::set<Atom> vocab;
  for (const Sentence& s : sentences) {
    auto v = s.vocabulary();
    vocab.insert(v.begin(), v.end());
  }
  if (extra) {
    auto v = extra->vocabulary();
    vocab.insert(v.begin(), v.end());
  }
  if (vocab.size() > kMaxEntailmentAtoms) {
    throw CapacityError("atom vocabulary exceeds entailment guard of " +
                        std::to_string(kMaxEntailmentAtoms));
  }
  std::map<Atom, std::size_t> index;
  std::size_t i = 0;
  for (const Atom& a : vocab) index.emplace(a, i++);
  return index;
}

}  // namespace detail

/// True iff some world satisfies every sentence.
inline bool satisfiable(const std::vector<Sentence>& sentences) {
  auto index = detail::index_vocabulary(sentences, nullptr);
  const std::uint32_t count = 1u << index.size();
  // Descending order tries the all-true world first; corpora dominated by
  // positive facts terminate immediately.
  for (std::uint32_t bits = count; bits-- > 0;) {
    bool all = true;
    for (const Sentence& s : sentences) {
      if (!evaluate_under(s, index, bits)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

/// True iff every world satisfying all premises satisfies the conclusion.
inline bool entails(const std::vector<Sentence>& premises, const Sentence& conclusion) {
  auto index = detail::index_vocabulary(premises, &conclusion);
  const std::uint32_t count = 1u << index.size();
  for (std::uint32_t bits = count; bits-- > 0;) {
    bool hold = true;
    for (const Sentence& p : premises) {
      if (!evaluate_under(p, index, bits)) {
        hold = false;
        break;
      }
    }
    if (hold && !evaluate_under(conclusion, index, bits)) return false;
  }
  return true;
}

/// Text form that the kb parser reads back: atoms `Attr(ind)`, `~` `&` `|`
/// `->`, parentheses only where precedence requires them.
inline std::string to_text(const Sentence& s) {
  struct Printer {
    static int precedence(Sentence::Kind k) {
      switch (k) {
        case Sentence::Kind::implication: return 0;
        case Sentence::Kind::disjunction: return 1;
        case Sentence::Kind::conjunction: return 2;
        case Sentence::Kind::negation: return 3;
        case Sentence::Kind::atom: return 4;
      }
      return 4;
    }
    static std::string print(const Sentence& s, int min_prec) {
      const int prec = precedence(s.kind());
      std::string body;
      switch (s.kind()) {
        case Sentence::Kind::atom:
          body = s.atom().to_string();
          break;
        case Sentence::Kind::negation:
          body = "~" + print(s.left(), 3);
          break;
        case Sentence::Kind::conjunction:
          body = print(s.left(), 2) + " & " + print(s.right(), 3);
          break;
        case Sentence::Kind::disjunction:
          body = print(s.left(), 1) + " | " + print(s.right(), 2);
          break;
        case Sentence::Kind::implication:
          body = print(s.left(), 1) + " -> " + print(s.right(), 0);
          break;
      }
      if (prec < min_prec) return "(" + body + ")";
      return body;
    }
  };
  return Printer::print(s, 0);
}

}  // namespace credal::logic
