#include "revsynth/permutation.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace revsynth {

Permutation Permutation::from_images(int n, std::vector<std::uint64_t> images) {
  if (n < 1) throw TooWideError("width must be at least 1");
  if (n > kMaxPermutationWidth)
    throw TooWideError("width " + std::to_string(n) + " exceeds cap " +
                       std::to_string(kMaxPermutationWidth));
  const std::uint64_t size = std::uint64_t{1} << n;
  if (images.size() != size)
    throw LengthMismatchError("expected " + std::to_string(size) +
                              " images, got " + std::to_string(images.size()));
  std::vector<bool> seen(size, false);
  for (std::uint64_t i = 0; i < size; ++i) {
    const std::uint64_t x = images[i];
    if (x >= size)
      throw NotABijectionError("image " + std::to_string(x) + " of " +
                               std::to_string(i) + " is out of range");
    if (seen[x])
      throw NotABijectionError("duplicate image " + std::to_string(x));
    seen[x] = true;
  }
  Permutation p;
  p.n_ = n;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::identity(int n) {
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<std::uint64_t> images(size);
  for (std::uint64_t i = 0; i < size; ++i) images[i] = i;
  return from_images(n, std::move(images));
}

Permutation Permutation::transposition(int n, std::uint64_t a, std::uint64_t b) {
  Permutation p = identity(n);
  std::swap(p.images_[a], p.images_[b]);
  return p;
}

bool Permutation::is_identity() const {
  for (std::uint64_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Support support(const Permutation& p) {
  Support s;
  for (std::uint64_t i = 0; i < p.size(); ++i)
    if (p(i) != i) s.moved.push_back(i);
  return s;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.width() != b.width())
    throw WidthMismatchError("cannot compose widths " +
                             std::to_string(a.width()) + " and " +
                             std::to_string(b.width()));
  std::vector<std::uint64_t> images(a.size());
  for (std::uint64_t i = 0; i < a.size(); ++i) images[i] = a(b(i));
  return Permutation::from_images(a.width(), std::move(images));
}

Permutation inverse(const Permutation& p) {
  std::vector<std::uint64_t> images(p.size());
  for (std::uint64_t i = 0; i < p.size(); ++i) images[p(i)] = i;
  return Permutation::from_images(p.width(), std::move(images));
}

namespace {

// Strips a trailing comment and surrounding whitespace.
std::string clean_line(std::string line) {
  if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = line.find_last_not_of(" \t\r");
  return line.substr(first, last - first + 1);
}

int width_for_count(std::size_t count, std::size_t line_no) {
  for (int n = 1; n <= kMaxPermutationWidth; ++n)
    if ((std::uint64_t{1} << n) == count) return n;
  throw ParseError(line_no, "image count " + std::to_string(count) +
                                " is not a power of two within the width cap");
}

}  // namespace

Permutation parse_truth_table(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::size_t header_line = 0;
  int n = -1;
  std::vector<std::uint64_t> images;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = clean_line(raw);
    if (line.empty()) continue;
    std::istringstream fields(line);
    if (n < 0) {
      header_line = line_no;
      std::string keyword;
      fields >> keyword;
      if (keyword == "n") {
        if (!(fields >> n) || n < 1)
          throw ParseError(line_no, "expected a positive width after 'n'");
        if (n > kMaxPermutationWidth)
          throw ParseError(line_no, "width exceeds cap " +
                                        std::to_string(kMaxPermutationWidth));
        std::string extra;
        if (fields >> extra) throw ParseError(line_no, "trailing tokens after width");
        images.reserve(std::uint64_t{1} << n);
        continue;
      }
      if (keyword == "perm:") {
        std::uint64_t image;
        while (fields >> image) images.push_back(image);
        if (fields.fail() && !fields.eof())
          throw ParseError(line_no, "malformed image value");
        n = width_for_count(images.size(), line_no);
        break;
      }
      throw ParseError(line_no, "expected 'n <width>' or 'perm:' header");
    }
    std::uint64_t image;
    if (!(fields >> image)) throw ParseError(line_no, "malformed image value");
    std::string extra;
    if (fields >> extra) throw ParseError(line_no, "trailing tokens after image");
    images.push_back(image);
    if (images.size() > (std::uint64_t{1} << n))
      throw ParseError(line_no, "more than 2^n images");
  }
  if (n < 0) throw ParseError(line_no ? line_no : 1, "empty truth table");
  if (images.size() != (std::uint64_t{1} << n))
    throw ParseError(line_no ? line_no : header_line,
                     "expected " + std::to_string(std::uint64_t{1} << n) +
                         " images, got " + std::to_string(images.size()));
  try {
    return Permutation::from_images(n, std::move(images));
  } catch (const Error& e) {
    throw ParseError(header_line, e.what());
  }
}

void emit_truth_table(const Permutation& p, std::ostream& out) {
  out << "n " << p.width() << "\n";
  for (std::uint64_t i = 0; i < p.size(); ++i) out << p(i) << "\n";
}

}  // namespace revsynth
