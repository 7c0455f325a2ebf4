#include "autorb/groupspec.hpp"

#include <algorithm>
#include <cctype>

namespace autorb {
namespace {

const char* name_str(GroupSpec::Name n) {
  switch (n) {
    case GroupSpec::Name::SL: return "SL";
    case GroupSpec::Name::GL: return "GL";
    case GroupSpec::Name::PSL: return "PSL";
    case GroupSpec::Name::PGL: return "PGL";
    case GroupSpec::Name::GMF: return "GMF";
    case GroupSpec::Name::ASL: return "ASL";
    case GroupSpec::Name::EA: return "EA";
    case GroupSpec::Name::A: return "A";
    case GroupSpec::Name::S: return "S";
    case GroupSpec::Name::POW: return "POW";
    case GroupSpec::Name::DP: return "DP";
  }
  return "?";
}

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail_syntax(const std::string& msg) {
    throw parse_error(parse_error::Kind::syntax, pos,
                      msg + " at position " + std::to_string(pos));
  }

  bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  void require_params(bool ok, std::size_t at, const std::string& msg) {
    if (!ok)
      throw parse_error(parse_error::Kind::bad_params, at,
                        msg + " at position " + std::to_string(at));
  }

  GroupSpec parse() {
    GroupSpec s = parse_spec_node();
    skip_ws();
    if (pos != text.size()) fail_syntax("trailing input");
    return s;
  }

  GroupSpec parse_spec_node() {
    skip_ws();
    std::size_t name_at = pos;
    std::string name;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos])))
      name.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(text[pos++]))));
    if (name.empty()) fail_syntax("expected a constructor name");

    GroupSpec s;
    if (name == "SL") s.name = GroupSpec::Name::SL;
    else if (name == "GL") s.name = GroupSpec::Name::GL;
    else if (name == "PSL") s.name = GroupSpec::Name::PSL;
    else if (name == "PGL") s.name = GroupSpec::Name::PGL;
    else if (name == "GMF") s.name = GroupSpec::Name::GMF;
    else if (name == "ASL") s.name = GroupSpec::Name::ASL;
    else if (name == "EA") s.name = GroupSpec::Name::EA;
    else if (name == "A") s.name = GroupSpec::Name::A;
    else if (name == "S") s.name = GroupSpec::Name::S;
    else if (name == "POW") s.name = GroupSpec::Name::POW;
    else if (name == "DP") s.name = GroupSpec::Name::DP;
    else
      throw parse_error(parse_error::Kind::unknown_name, name_at,
                        "unknown constructor '" + name + "' at position " +
                            std::to_string(name_at));

    skip_ws();
    if (pos >= text.size() || text[pos] != '(') fail_syntax("expected '('");
    ++pos;
    while (true) {
      skip_ws();
      if (pos >= text.size()) fail_syntax("unterminated argument list");
      if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          v = v * 10 + (text[pos] - '0');
          if (v > 1000000) fail_syntax("integer argument too large");
          ++pos;
        }
        s.ints.push_back(static_cast<int>(v));
      } else if (std::isalpha(static_cast<unsigned char>(text[pos]))) {
        s.subs.push_back(parse_spec_node());
      } else {
        fail_syntax("expected an argument");
      }
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      fail_syntax("expected ',' or ')'");
    }
    validate(s, name_at);
    return s;
  }

  void validate(const GroupSpec& s, std::size_t at) {
    using Name = GroupSpec::Name;
    auto ints_only = [&](std::size_t n) {
      require_params(s.subs.empty() && s.ints.size() == n,
                     at, std::string(name_str(s.name)) + " takes " + std::to_string(n) +
                             " integer argument(s)");
    };
    static const std::vector<int> kFieldOrders = {2, 3, 4, 5, 7, 8, 9, 16};
    auto field_order_ok = [&](int q) {
      return std::find(kFieldOrders.begin(), kFieldOrders.end(), q) != kFieldOrders.end();
    };
    switch (s.name) {
      case Name::SL: {
        ints_only(2);
        int n = s.ints[0], q = s.ints[1];
        require_params((n == 2 || n == 3) && field_order_ok(q), at, "unsupported SL(n,q)");
        require_params(n == 2 || (n == 3 && q <= 4), at, "unsupported SL(3,q)");
        break;
      }
      case Name::GL: {
        ints_only(2);
        require_params(s.ints[0] == 2 && field_order_ok(s.ints[1]), at, "unsupported GL(n,q)");
        break;
      }
      case Name::PSL: {
        ints_only(2);
        int n = s.ints[0], q = s.ints[1];
        bool ok = (n == 2 && (q == 4 || q == 5 || q == 7 || q == 8 || q == 9)) ||
                  (n == 3 && q == 4);
        require_params(ok, at, "unsupported PSL(n,q)");
        break;
      }
      case Name::PGL: {
        ints_only(2);
        int n = s.ints[0], q = s.ints[1];
        bool ok = n == 2 && (q == 4 || q == 5 || q == 7 || q == 8 || q == 9);
        require_params(ok, at, "unsupported PGL(n,q)");
        break;
      }
      case Name::GMF: {
        ints_only(2);
        int m = s.ints[0], q = s.ints[1];
        require_params(m >= 1 && m <= 8, at, "GMF needs 1 <= m <= 8");
        require_params(q == 4 || q == 8 || q == 16, at,
                       "GMF needs q a power of 2 with q > 2");
        break;
      }
      case Name::ASL: {
        ints_only(2);
        int n = s.ints[0], q = s.ints[1];
        require_params(n == 2, at, "only ASL(2,q) is supported");
        require_params(q == 4 || q == 8 || q == 16, at,
                       "ASL needs q a power of 2 with q > 2");
        break;
      }
      case Name::EA: {
        ints_only(2);
        int p = s.ints[0], k = s.ints[1];
        require_params(is_prime(p), at, "EA needs a prime p");
        long long size = 1;
        bool fits = k >= 1;
        for (int i = 0; i < k && fits; ++i) {
          size *= p;
          if (size > 4096) fits = false;
        }
        require_params(fits, at, "EA needs p^k <= 4096");
        break;
      }
      case Name::A:
      case Name::S: {
        ints_only(1);
        require_params(s.ints[0] >= 1 && s.ints[0] <= 10, at, "degree must be 1..10");
        break;
      }
      case Name::POW: {
        require_params(s.subs.size() == 1 && s.ints.size() == 1, at,
                       "POW takes a spec and an exponent");
        require_params(s.ints[0] >= 1 && s.ints[0] <= 8, at, "exponent must be 1..8");
        break;
      }
      case Name::DP: {
        require_params(s.ints.empty() && s.subs.size() >= 2 && s.subs.size() <= 8, at,
                       "DP takes 2..8 specs");
        break;
      }
    }
  }
};

}  // namespace

std::string GroupSpec::str() const {
  std::string out = name_str(name);
  out += "(";
  bool first = true;
  if (name == Name::POW) {
    out += subs[0].str() + "," + std::to_string(ints[0]);
  } else if (name == Name::DP) {
    for (const auto& sub : subs) {
      if (!first) out += ",";
      out += sub.str();
      first = false;
    }
  } else {
    for (int v : ints) {
      if (!first) out += ",";
      out += std::to_string(v);
      first = false;
    }
  }
  out += ")";
  return out;
}

bool GroupSpec::operator==(const GroupSpec& o) const {
  return name == o.name && ints == o.ints && subs == o.subs;
}

GroupSpec parse_spec(const std::string& text) {
  Parser p{text};
  return p.parse();
}

}  // namespace autorb
