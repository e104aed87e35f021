#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "mtloss/errors.hpp"
#include "mtloss/image.hpp"

namespace mtloss {

Image::Image(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size())
    throw InvalidArgument("image has " + std::to_string(values.size()) + " values but grid has " +
                          std::to_string(grid.size()) + " pixels");
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i])) throw InvalidArgument("image value at pixel " + std::to_string(i) + " is not finite");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw IoError("read failure on '" + path.string() + "'");
  return data;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

std::string format_real(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), end);
}

namespace {

// chain2 only makes sense for single-row data; 2-d files fall back to conn8.
Connectivity fit_connectivity(Connectivity c, std::size_t height) {
  return (c == Connectivity::chain2 && height > 1) ? Connectivity::conn8 : c;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

class PgmCursor {
 public:
  explicit PgmCursor(const std::string& bytes) : bytes_(bytes) {}

  void skip_separators() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  unsigned long read_uint(const char* what) {
    skip_separators();
    const std::size_t start = pos_;
    if (pos_ >= bytes_.size()) throw ParseError(std::string("unexpected end of data, expected ") + what, pos_);
    unsigned long value = 0;
    auto [ptr, ec] = std::from_chars(bytes_.data() + pos_, bytes_.data() + bytes_.size(), value);
    if (ec != std::errc() || ptr == bytes_.data() + pos_)
      throw ParseError(std::string("expected ") + what, start);
    pos_ = static_cast<std::size_t>(ptr - bytes_.data());
    if (pos_ < bytes_.size() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#')
      throw ParseError(std::string("malformed ") + what, start);
    return value;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  unsigned char at(std::size_t i) const { return static_cast<unsigned char>(bytes_[i]); }

 private:
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Image parse_pgm(const std::string& bytes, Connectivity connectivity) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
    throw ParseError("not a P2/P5 graymap (bad magic number)", 0);
  const bool binary = bytes[1] == '5';
  PgmCursor cur(bytes);
  cur.advance(2);
  if (cur.remaining() > 0 && !is_space(bytes[cur.pos()]) && bytes[cur.pos()] != '#')
    throw ParseError("bad magic number", 0);

  const std::size_t dims_at = cur.pos();
  const unsigned long width = cur.read_uint("width");
  const unsigned long height = cur.read_uint("height");
  if (width == 0 || height == 0) throw ParseError("zero image dimension", dims_at);
  const std::size_t maxval_at = cur.pos();
  const unsigned long maxval = cur.read_uint("maxval");
  if (maxval == 0 || maxval > 255) throw ParseError("unsupported maxval " + std::to_string(maxval) + " (must be 1..255)", maxval_at);

  const std::size_t n = width * height;
  std::vector<double> values(n);
  const double scale = static_cast<double>(maxval);
  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    if (cur.remaining() == 0 || !is_space(bytes[cur.pos()])) throw ParseError("missing raster separator", cur.pos());
    cur.advance(1);
    if (cur.remaining() < n)
      throw ParseError("truncated raster: expected " + std::to_string(n) + " bytes, found " + std::to_string(cur.remaining()),
                       bytes.size());
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned char b = cur.at(cur.pos() + i);
      if (b > maxval) throw ParseError("sample exceeds maxval", cur.pos() + i);
      values[i] = b / scale;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      cur.skip_separators();
      const std::size_t at = cur.pos();
      if (cur.remaining() == 0)
        throw ParseError("truncated raster: expected " + std::to_string(n) + " samples, found " + std::to_string(i), at);
      const unsigned long sample = cur.read_uint("sample");
      if (sample > maxval) throw ParseError("sample exceeds maxval", at);
      values[i] = static_cast<double>(sample) / scale;
    }
  }
  return Image(Grid(width, height, fit_connectivity(connectivity, height)), std::move(values));
}

Image read_pgm(const std::filesystem::path& path, Connectivity connectivity) {
  const std::string bytes = read_file(path);
  try {
    return parse_pgm(bytes, connectivity);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.detail(), e.offset());
  }
}

std::vector<unsigned char> quantize_levels(const Image& image) {
  const auto [lo_it, hi_it] = std::minmax_element(image.values.begin(), image.values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  std::vector<unsigned char> levels(image.size(), 0);
  if (!(hi > lo)) return levels;
  for (std::size_t i = 0; i < image.size(); ++i) {
    const double t = (std::clamp(image.values[i], lo, hi) - lo) / (hi - lo);
    levels[i] = static_cast<unsigned char>(std::lround(t * 255.0));
  }
  return levels;
}

std::string format_pgm(const Image& image) {
  std::string out = "P5\n" + std::to_string(image.grid.width()) + " " + std::to_string(image.grid.height()) + "\n255\n";
  const auto levels = quantize_levels(image);
  out.append(levels.begin(), levels.end());
  return out;
}

void write_pgm(const Image& image, const std::filesystem::path& path) { write_file(path, format_pgm(image)); }

Image parse_csv_matrix(const std::string& text, Connectivity connectivity) {
  std::vector<double> values;
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::size_t line_end = eol;
    if (line_end > pos && text[line_end - 1] == '\r') --line_end;
    if (line_end > pos) {
      std::size_t count = 0;
      std::size_t field = pos;
      while (true) {
        std::size_t comma = text.find(',', field);
        if (comma == std::string::npos || comma > line_end) comma = line_end;
        std::size_t b = field;
        std::size_t e = comma;
        while (b < e && is_space(text[b])) ++b;
        while (e > b && is_space(text[e - 1])) --e;
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text.data() + b, text.data() + e, v);
        if (b == e || ec != std::errc() || ptr != text.data() + e)
          throw ParseError("invalid number '" + text.substr(b, e - b) + "' in row " + std::to_string(height + 1), b);
        if (!std::isfinite(v)) throw ParseError("non-finite value in row " + std::to_string(height + 1), b);
        values.push_back(v);
        ++count;
        if (comma == line_end) break;
        field = comma + 1;
      }
      if (height == 0) {
        width = count;
      } else if (count != width) {
        throw ParseError("row " + std::to_string(height + 1) + " has " + std::to_string(count) + " values, expected " +
                             std::to_string(width),
                         pos);
      }
      ++height;
    }
    pos = eol + 1;
  }
  if (height == 0) throw ParseError("empty matrix", 0);
  return Image(Grid(width, height, fit_connectivity(connectivity, height)), std::move(values));
}

Image read_csv_matrix(const std::filesystem::path& path, Connectivity connectivity) {
  const std::string text = read_file(path);
  try {
    return parse_csv_matrix(text, connectivity);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.detail(), e.offset());
  }
}

std::string format_csv_matrix(const Image& image) {
  std::string out;
  const std::size_t w = image.grid.width();
  for (std::size_t y = 0; y < image.grid.height(); ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      if (x) out += ',';
      out += format_real(image.values[y * w + x]);
    }
    out += '\n';
  }
  return out;
}

void write_csv_matrix(const Image& image, const std::filesystem::path& path) {
  write_file(path, format_csv_matrix(image));
}

namespace {
bool has_pgm_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".pgm";
}
}  // namespace

Image read_image(const std::filesystem::path& path, Connectivity connectivity) {
  return has_pgm_extension(path) ? read_pgm(path, connectivity) : read_csv_matrix(path, connectivity);
}

void write_image(const Image& image, const std::filesystem::path& path) {
  if (has_pgm_extension(path)) {
    write_pgm(image, path);
  } else {
    write_csv_matrix(image, path);
  }
}

}  // namespace mtloss
