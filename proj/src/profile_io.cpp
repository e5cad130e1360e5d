#include <istream>
#include <ostream>
#include <sstream>

#include "hclab/errors.hpp"
#include "hclab/profile.hpp"

namespace hclab {

namespace {

std::size_t parse_index(const std::string& token, std::size_t n, std::size_t line_no) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos || (token.size() > 1 && token[0] == '0'))
    throw ParseError("profile line " + std::to_string(line_no) + ": bad index '" + token + "'");
  const auto v = std::stoull(token);
  if (v > n) throw ParseError("profile line " + std::to_string(line_no) + ": index out of range");
  return static_cast<std::size_t>(v);
}

}  // namespace

void write_profile(std::ostream& out, const BivariateProfile& p) {
  out << "d=" << p.dimension() << '\n';
  for (std::size_t a = 0; a <= p.side_size(); ++a)
    for (std::size_t b = 0; b <= p.side_size(); ++b)
      if (p.at(a, b) != 0) out << a << ' ' << b << ' ' << p.at(a, b).str() << '\n';
  if (!out) throw IoError("failed writing profile");
}

BivariateProfile read_profile(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("d=", 0) != 0) throw ParseError("profile must start with 'd=<d>'");
  const std::string dtext = line.substr(2);
  if (dtext.empty() || dtext.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("profile: bad dimension '" + dtext + "'");
  const int d = std::stoi(dtext);
  if (d < 1) throw ParseError("profile: dimension must be >= 1");
  BivariateProfile p(d);

  std::size_t line_no = 1;
  long prev = -1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto s1 = line.find(' ');
    const auto s2 = s1 == std::string::npos ? s1 : line.find(' ', s1 + 1);
    if (s2 == std::string::npos || line.find(' ', s2 + 1) != std::string::npos)
      throw ParseError("profile line " + std::to_string(line_no) + ": expected 'a b count'");
    const std::size_t a = parse_index(line.substr(0, s1), p.side_size(), line_no);
    const std::size_t b = parse_index(line.substr(s1 + 1, s2 - s1 - 1), p.side_size(), line_no);
    const std::string count = line.substr(s2 + 1);
    if (count.empty() || count.find_first_not_of("0123456789") != std::string::npos || count[0] == '0')
      throw ParseError("profile line " + std::to_string(line_no) + ": bad count");
    const long key = static_cast<long>(a * (p.side_size() + 1) + b);
    if (key <= prev) throw ParseError("profile line " + std::to_string(line_no) + ": entries out of order");
    prev = key;
    p.at(a, b) = BigInt(count);
  }
  if (!in.eof()) throw IoError("failed reading profile");
  return p;
}

std::string profile_to_string(const BivariateProfile& p) {
  std::ostringstream out;
  write_profile(out, p);
  return out.str();
}

BivariateProfile profile_from_string(const std::string& text) {
  if (!text.empty() && text.back() != '\n') throw ParseError("profile must end with a newline");
  std::istringstream in(text);
  return read_profile(in);
}

}  // namespace hclab
