#include "susmat/ring.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <unordered_map>

namespace susmat {

namespace detail {

struct RingData {
  RingDescriptor desc;
  std::unordered_map<std::string, std::size_t> var_index;
};

}  // namespace detail

using detail::RingData;

// ---------------------------------------------------------------------------
// RingDescriptor

RingDescriptor RingDescriptor::integers() {
  RingDescriptor d;
  d.kind = RingKind::integers;
  return d;
}

RingDescriptor RingDescriptor::modular(BigInt m) {
  RingDescriptor d;
  d.kind = RingKind::modular;
  d.modulus = std::move(m);
  return d;
}

RingDescriptor RingDescriptor::polynomial(std::vector<std::string> vars) {
  RingDescriptor d;
  d.kind = RingKind::polynomial;
  d.vars = std::move(vars);
  return d;
}

bool RingDescriptor::operator==(const RingDescriptor& o) const {
  return kind == o.kind && modulus == o.modulus && vars == o.vars;
}

static bool valid_var_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

void RingDescriptor::validate() const {
  switch (kind) {
    case RingKind::integers:
      break;
    case RingKind::modular:
      if (modulus < 2) throw std::invalid_argument("modulus must be >= 2");
      break;
    case RingKind::polynomial: {
      std::set<std::string> seen;
      for (const auto& v : vars) {
        if (!valid_var_name(v))
          throw std::invalid_argument("invalid variable name '" + v + "'");
        if (!seen.insert(v).second)
          throw std::invalid_argument("duplicate variable name '" + v + "'");
      }
      break;
    }
  }
}

RingDescriptor RingDescriptor::parse(std::string_view text) {
  std::string s(text);
  if (s == "int" || s == "integers") return integers();
  if (s.rfind("mod:", 0) == 0) {
    std::string body = s.substr(4);
    if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad modulus in ring descriptor '" + s + "'");
    RingDescriptor d = modular(BigInt(body));
    d.validate();
    return d;
  }
  if (s == "poly") return polynomial({});
  if (s.rfind("poly:", 0) == 0) {
    std::vector<std::string> vars;
    std::string body = s.substr(5);
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t comma = body.find(',', pos);
      if (comma == std::string::npos) comma = body.size();
      vars.push_back(body.substr(pos, comma - pos));
      pos = comma + 1;
    }
    RingDescriptor d = polynomial(std::move(vars));
    d.validate();
    return d;
  }
  throw std::invalid_argument("unknown ring descriptor '" + s +
                              "' (expected int, mod:<m>, poly:v1,v2,...)");
}

std::string RingDescriptor::to_string() const {
  switch (kind) {
    case RingKind::integers:
      return "int";
    case RingKind::modular:
      return "mod:" + modulus.str();
    case RingKind::polynomial: {
      std::string s = "poly:";
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) s += ',';
        s += vars[i];
      }
      return s;
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Monomial order

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (auto e : exps) d += e;
  return d;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  const auto da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return a.exps > b.exps;  // lexicographic on the declared variable list
}

// ---------------------------------------------------------------------------
// Ring

Ring::Ring(RingDescriptor desc) {
  desc.validate();
  auto data = std::make_shared<RingData>();
  data->desc = std::move(desc);
  for (std::size_t i = 0; i < data->desc.vars.size(); ++i)
    data->var_index.emplace(data->desc.vars[i], i);
  data_ = std::move(data);
}

Ring::Ring(std::shared_ptr<const RingData> data) : data_(std::move(data)) {}

const RingDescriptor& Ring::descriptor() const { return data_->desc; }
RingKind Ring::kind() const { return data_->desc.kind; }
std::string Ring::to_string() const { return data_->desc.to_string(); }

bool Ring::same(const Ring& other) const {
  return data_ == other.data_ || data_->desc == other.data_->desc;
}

static BigInt mod_reduce(BigInt v, const BigInt& m) {
  v %= m;
  if (v < 0) v += m;
  return v;
}

Scalar Ring::zero() const { return from_integer(BigInt(0)); }
Scalar Ring::one() const { return from_integer(BigInt(1)); }

Scalar Ring::from_integer(const BigInt& v) const {
  switch (kind()) {
    case RingKind::integers:
      return Scalar(data_, v);
    case RingKind::modular:
      return Scalar(data_, mod_reduce(v, data_->desc.modulus));
    case RingKind::polynomial: {
      PolyTerms t;
      if (v != 0) t.emplace(Monomial{std::vector<std::uint32_t>(data_->desc.vars.size(), 0)}, v);
      return Scalar(data_, std::move(t));
    }
  }
  throw std::logic_error("unreachable ring kind");
}

Scalar Ring::from_integer(long long v) const { return from_integer(BigInt(v)); }

Scalar Ring::variable(const std::string& name) const {
  if (kind() != RingKind::polynomial)
    throw std::invalid_argument("variable('" + name + "') on a non-polynomial ring");
  auto it = data_->var_index.find(name);
  if (it == data_->var_index.end())
    throw std::invalid_argument("unknown variable '" + name + "' in " + to_string());
  Monomial m{std::vector<std::uint32_t>(data_->desc.vars.size(), 0)};
  m.exps[it->second] = 1;
  PolyTerms t;
  t.emplace(std::move(m), BigInt(1));
  return Scalar(data_, std::move(t));
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(std::shared_ptr<const RingData> ring, BigInt v)
    : ring_(std::move(ring)), value_(std::move(v)) {}

Scalar::Scalar(std::shared_ptr<const RingData> ring, PolyTerms terms)
    : ring_(std::move(ring)), value_(std::move(terms)) {}

Ring Scalar::ring() const { return Ring(ring_); }
RingKind Scalar::kind() const { return ring_->desc.kind; }

const BigInt& Scalar::integer_value() const {
  if (kind() == RingKind::polynomial)
    throw std::invalid_argument("integer_value() on a polynomial scalar");
  return std::get<BigInt>(value_);
}

const PolyTerms& Scalar::poly_terms() const {
  if (kind() != RingKind::polynomial)
    throw std::invalid_argument("poly_terms() on a non-polynomial scalar");
  return std::get<PolyTerms>(value_);
}

bool Scalar::is_zero() const {
  if (kind() == RingKind::polynomial) return std::get<PolyTerms>(value_).empty();
  return std::get<BigInt>(value_) == 0;
}

bool Scalar::is_one() const {
  if (kind() == RingKind::polynomial) {
    const auto& t = std::get<PolyTerms>(value_);
    return t.size() == 1 && t.begin()->second == 1 && t.begin()->first.degree() == 0;
  }
  return std::get<BigInt>(value_) == 1;
}

const RingData& require_same_ring(const Scalar& a, const Scalar& b, const char* op) {
  if (a.ring_ == b.ring_ || a.ring_->desc == b.ring_->desc) return *a.ring_;
  throw std::invalid_argument(std::string("ring mismatch in ") + op + ": " +
                              a.ring_->desc.to_string() + " vs " +
                              b.ring_->desc.to_string());
}

static void poly_add_into(PolyTerms& acc, const Monomial& m, const BigInt& c) {
  auto it = acc.find(m);
  if (it == acc.end()) {
    if (c != 0) acc.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0) acc.erase(it);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  const auto& rd = require_same_ring(*this, o, "+");
  switch (rd.desc.kind) {
    case RingKind::integers:
      std::get<BigInt>(value_) += std::get<BigInt>(o.value_);
      break;
    case RingKind::modular:
      std::get<BigInt>(value_) =
          mod_reduce(std::get<BigInt>(value_) + std::get<BigInt>(o.value_), rd.desc.modulus);
      break;
    case RingKind::polynomial: {
      auto& t = std::get<PolyTerms>(value_);
      for (const auto& [m, c] : std::get<PolyTerms>(o.value_)) poly_add_into(t, m, c);
      break;
    }
  }
  return *this;
}

Scalar Scalar::operator-() const {
  switch (kind()) {
    case RingKind::integers:
      return Scalar(ring_, -std::get<BigInt>(value_));
    case RingKind::modular:
      return Scalar(ring_, mod_reduce(-std::get<BigInt>(value_), ring_->desc.modulus));
    case RingKind::polynomial: {
      PolyTerms t;
      for (const auto& [m, c] : std::get<PolyTerms>(value_)) t.emplace(m, -c);
      return Scalar(ring_, std::move(t));
    }
  }
  throw std::logic_error("unreachable ring kind");
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  const auto& rd = require_same_ring(*this, o, "*");
  switch (rd.desc.kind) {
    case RingKind::integers:
      std::get<BigInt>(value_) *= std::get<BigInt>(o.value_);
      break;
    case RingKind::modular:
      std::get<BigInt>(value_) =
          mod_reduce(std::get<BigInt>(value_) * std::get<BigInt>(o.value_), rd.desc.modulus);
      break;
    case RingKind::polynomial: {
      const auto& ta = std::get<PolyTerms>(value_);
      const auto& tb = std::get<PolyTerms>(o.value_);
      PolyTerms prod;
      for (const auto& [ma, ca] : ta) {
        for (const auto& [mb, cb] : tb) {
          Monomial m{ma.exps};
          for (std::size_t i = 0; i < m.exps.size(); ++i) m.exps[i] += mb.exps[i];
          poly_add_into(prod, m, ca * cb);
        }
      }
      value_ = std::move(prod);
      break;
    }
  }
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  require_same_ring(a, b, "==");
  return a.value_ == b.value_;
}

bool scalar_is_unit(const Scalar& s) {
  switch (s.kind()) {
    case RingKind::integers:
      return s.integer_value() == 1 || s.integer_value() == -1;
    case RingKind::modular:
      return gcd(s.integer_value(), s.ring().descriptor().modulus) == 1;
    case RingKind::polynomial: {
      const auto& t = s.poly_terms();
      return t.size() == 1 && t.begin()->first.degree() == 0 &&
             (t.begin()->second == 1 || t.begin()->second == -1);
    }
  }
  return false;
}

// ax + my = gcd(a, m); returns x.
static BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt old_r = a, r = m;
  BigInt old_s = 1, s = 0;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1 && old_r != -1) throw std::invalid_argument("not invertible");
  if (old_r == -1) old_s = -old_s;
  return mod_reduce(old_s, m);
}

std::optional<Scalar> scalar_inverse(const Scalar& s) {
  if (!scalar_is_unit(s)) return std::nullopt;
  switch (s.kind()) {
    case RingKind::integers:
    case RingKind::polynomial:
      return s;  // the only units are +-1, each its own inverse
    case RingKind::modular:
      return s.ring().from_integer(
          mod_inverse(s.integer_value(), s.ring().descriptor().modulus));
  }
  return std::nullopt;
}

Scalar scalar_pow(const Scalar& base, std::uint64_t k) {
  Scalar acc = base.ring().one();
  Scalar b = base;
  while (k) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Printing

static void append_poly_term(std::string& out, const Monomial& m, const BigInt& c,
                             const std::vector<std::string>& vars, bool first) {
  BigInt a = c < 0 ? BigInt(-c) : c;
  if (first) {
    if (c < 0) out += '-';
  } else {
    out += c < 0 ? " - " : " + ";
  }
  std::string body;
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    if (m.exps[i] == 0) continue;
    if (!body.empty()) body += '*';
    body += vars[i];
    if (m.exps[i] > 1) body += '^' + std::to_string(m.exps[i]);
  }
  if (body.empty()) {
    out += a.str();
  } else if (a == 1) {
    out += body;
  } else {
    out += a.str() + '*' + body;
  }
}

std::string Scalar::to_string() const {
  switch (kind()) {
    case RingKind::integers:
    case RingKind::modular:
      return std::get<BigInt>(value_).str();
    case RingKind::polynomial: {
      const auto& t = std::get<PolyTerms>(value_);
      if (t.empty()) return "0";
      std::string out;
      bool first = true;
      for (const auto& [m, c] : t) {
        append_poly_term(out, m, c, ring_->desc.vars, first);
        first = false;
      }
      return out;
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Expression parser

namespace {

struct Token {
  enum Type { num, ident, plus, minus, times, caret, lparen, rparen, end } type;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    skip_space();
    if (pos_ >= s_.size()) return {Token::end, ""};
    unsigned char c = s_[pos_];
    // UTF-8 middle dot (0xC2 0xB7) acts as *, minus sign (0xE2 0x88 0x92) as -.
    if (c == 0xC2 && pos_ + 1 < s_.size() &&
        static_cast<unsigned char>(s_[pos_ + 1]) == 0xB7) {
      pos_ += 2;
      return {Token::times, "*"};
    }
    if (c == 0xE2 && pos_ + 2 < s_.size() &&
        static_cast<unsigned char>(s_[pos_ + 1]) == 0x88 &&
        static_cast<unsigned char>(s_[pos_ + 2]) == 0x92) {
      pos_ += 3;
      return {Token::minus, "-"};
    }
    if (std::isdigit(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return {Token::num, std::string(s_.substr(start, pos_ - start))};
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return {Token::ident, std::string(s_.substr(start, pos_ - start))};
    }
    ++pos_;
    switch (c) {
      case '+': return {Token::plus, "+"};
      case '-': return {Token::minus, "-"};
      case '*': return {Token::times, "*"};
      case '^': return {Token::caret, "^"};
      case '(': return {Token::lparen, "("};
      case ')': return {Token::rparen, ")"};
    }
    throw std::invalid_argument("unexpected character '" + std::string(1, char(c)) +
                                "' in scalar expression");
  }

 private:
  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  std::string_view s_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(const Ring& ring, std::string_view s) : ring_(ring), lex_(s) { advance(); }

  Scalar parse_all() {
    Scalar v = expr();
    if (tok_.type != Token::end)
      throw std::invalid_argument("trailing input in scalar expression");
    return v;
  }

 private:
  void advance() { tok_ = lex_.next(); }

  Scalar expr() {
    bool neg = false;
    if (tok_.type == Token::plus) {
      advance();
    } else if (tok_.type == Token::minus) {
      neg = true;
      advance();
    }
    Scalar acc = term();
    if (neg) acc = -acc;
    while (tok_.type == Token::plus || tok_.type == Token::minus) {
      bool sub = tok_.type == Token::minus;
      advance();
      Scalar t = term();
      if (sub)
        acc -= t;
      else
        acc += t;
    }
    return acc;
  }

  Scalar term() {
    Scalar acc = factor();
    while (tok_.type == Token::times) {
      advance();
      acc *= factor();
    }
    return acc;
  }

  Scalar factor() {
    Scalar base = atom();
    if (tok_.type == Token::caret) {
      advance();
      if (tok_.type != Token::num)
        throw std::invalid_argument("expected integer exponent after '^'");
      unsigned long long e = std::stoull(tok_.text);
      advance();
      return scalar_pow(base, e);
    }
    return base;
  }

  Scalar atom() {
    switch (tok_.type) {
      case Token::num: {
        Scalar v = ring_.from_integer(BigInt(tok_.text));
        advance();
        return v;
      }
      case Token::ident: {
        Scalar v = ring_.variable(tok_.text);
        advance();
        return v;
      }
      case Token::lparen: {
        advance();
        Scalar v = expr();
        if (tok_.type != Token::rparen)
          throw std::invalid_argument("missing ')' in scalar expression");
        advance();
        return v;
      }
      default:
        throw std::invalid_argument("unexpected token '" + tok_.text +
                                    "' in scalar expression");
    }
  }

  Ring ring_;
  Lexer lex_;
  Token tok_{Token::end, ""};
};

}  // namespace

Scalar Ring::parse(std::string_view expr) const {
  return Parser(*this, expr).parse_all();
}

}  // namespace susmat
