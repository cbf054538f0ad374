#include "edgeforce/raster_io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

namespace edgeforce {

namespace {

std::string at_offset(const std::string& msg, std::size_t offset) {
  return msg + " (at byte " + std::to_string(offset) + ")";
}

bool is_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

// Token reader over a PNM header / P2 body. Comments run from '#' to end of
// line and may appear anywhere whitespace may.
class Tokenizer {
 public:
  explicit Tokenizer(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

  void skip_space_and_comments() {
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

  // Reads an unsigned decimal integer; `what` names the field in errors.
  unsigned long read_uint(const char* what) {
    skip_space_and_comments();
    std::size_t start = pos_;
    if (pos_ >= bytes_.size()) {
      throw PnmError(at_offset(std::string("unexpected end of data reading ") +
                                   what, start), start);
    }
    unsigned long value = 0;
    const char* first = reinterpret_cast<const char*>(bytes_.data()) + pos_;
    const char* last = reinterpret_cast<const char*>(bytes_.data()) +
                       bytes_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) {
      throw PnmError(at_offset(std::string("expected integer for ") + what,
                               start), start);
    }
    pos_ += static_cast<std::size_t>(ptr - first);
    if (pos_ < bytes_.size() && !is_space(bytes_[pos_]) &&
        bytes_[pos_] != '#') {
      throw PnmError(at_offset(std::string("garbage after ") + what, pos_),
                     pos_);
    }
    return value;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint8_t rescale(unsigned long v, unsigned long maxval) {
  if (maxval == 255) return static_cast<std::uint8_t>(v);
  return static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
}

void append_header(std::vector<std::uint8_t>& out, const char* magic, int w,
                   int h) {
  std::string header = std::string(magic) + "\n" + std::to_string(w) + " " +
                       std::to_string(h) + "\n255\n";
  out.insert(out.end(), header.begin(), header.end());
}

}  // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : GrayImage(width, height,
                std::vector<std::uint8_t>(
                    static_cast<std::size_t>(std::max(width, 0)) *
                        static_cast<std::size_t>(std::max(height, 0)),
                    fill)) {}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < kMinSide || height < kMinSide) {
    throw std::invalid_argument("image is " + std::to_string(width) + "x" +
                                std::to_string(height) +
                                ", minimum is 3x3");
  }
  if (pixels_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("pixel buffer size does not match dimensions");
  }
}

PnmError::PnmError(const std::string& what, std::size_t offset)
    : std::runtime_error(what), offset_(offset) {}

GrayImage load_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw PnmError(at_offset("bad magic, expected P2 or P5", 0), 0);
  }
  const bool binary = bytes[1] == '5';
  Tokenizer tok(bytes);
  tok.advance(2);
  if (tok.remaining() > 0 && !is_space(bytes[2]) && bytes[2] != '#') {
    throw PnmError(at_offset("bad magic, expected P2 or P5", 0), 0);
  }

  std::size_t dims_offset = tok.pos();
  unsigned long width = tok.read_uint("width");
  unsigned long height = tok.read_uint("height");
  if (width < GrayImage::kMinSide || height < GrayImage::kMinSide) {
    throw PnmError(at_offset("image is " + std::to_string(width) + "x" +
                                 std::to_string(height) +
                                 ", below the 3x3 minimum",
                             dims_offset),
                   dims_offset);
  }
  if (width > 1u << 15 || height > 1u << 15) {
    throw PnmError(at_offset("image dimensions too large", dims_offset),
                   dims_offset);
  }
  std::size_t maxval_offset = tok.pos();
  unsigned long maxval = tok.read_uint("maxval");
  if (maxval == 0 || maxval > 255) {
    throw PnmError(at_offset("maxval " + std::to_string(maxval) +
                                 " unsupported, must be in [1, 255]",
                             maxval_offset),
                   maxval_offset);
  }

  const std::size_t count = width * height;
  std::vector<std::uint8_t> pixels(count);
  if (binary) {
    // Exactly one whitespace byte separates maxval from the raster.
    if (tok.remaining() == 0) {
      throw PnmError(at_offset("truncated pixel data", tok.pos()), tok.pos());
    }
    tok.advance(1);
    if (tok.remaining() < count) {
      throw PnmError(at_offset("truncated pixel data: expected " +
                                   std::to_string(count) + " bytes, found " +
                                   std::to_string(tok.remaining()),
                               tok.pos()),
                     tok.pos());
    }
    for (std::size_t i = 0; i < count; ++i) {
      std::uint8_t v = bytes[tok.pos() + i];
      if (v > maxval) {
        throw PnmError(at_offset("sample exceeds maxval", tok.pos() + i),
                       tok.pos() + i);
      }
      pixels[i] = rescale(v, maxval);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      tok.skip_space_and_comments();
      std::size_t at = tok.pos();
      if (tok.remaining() == 0) {
        throw PnmError(at_offset("truncated pixel data: expected " +
                                     std::to_string(count) + " samples, found " +
                                     std::to_string(i),
                                 at),
                       at);
      }
      unsigned long v = tok.read_uint("sample");
      if (v > maxval) {
        throw PnmError(at_offset("sample exceeds maxval", at), at);
      }
      pixels[i] = rescale(v, maxval);
    }
  }
  return GrayImage(static_cast<int>(width), static_cast<int>(height),
                   std::move(pixels));
}

std::vector<std::uint8_t> save_pnm(const GrayImage& image) {
  std::vector<std::uint8_t> out;
  append_header(out, "P5", image.width(), image.height());
  out.insert(out.end(), image.pixels().begin(), image.pixels().end());
  return out;
}

std::vector<std::uint8_t> save_pnm(const RgbImage& image) {
  std::vector<std::uint8_t> out;
  append_header(out, "P6", image.width, image.height);
  out.insert(out.end(), image.rgb.begin(), image.rgb.end());
  return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path,
                std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("short write to " + path.string());
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                             text.size()));
}

GrayImage load_pgm_file(const std::filesystem::path& path) {
  auto bytes = read_file(path);
  try {
    return load_pgm(bytes);
  } catch (const PnmError& e) {
    throw PnmError(path.string() + ": " + e.what(), e.offset());
  }
}

RegionMask RegionMask::parse_rect(const std::string& text) {
  RectRegion r;
  int* fields[] = {&r.x0, &r.y0, &r.x1, &r.y1};
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int i = 0; i < 4; ++i) {
    auto [next, ec] = std::from_chars(p, end, *fields[i]);
    if (ec != std::errc() || (i < 3 && (next == end || *next != ',')) ||
        (i == 3 && next != end)) {
      throw std::invalid_argument("bad rectangle '" + text +
                                  "', expected x0,y0,x1,y1");
    }
    p = next + (i < 3 ? 1 : 0);
  }
  return RegionMask(r);
}

void RegionMask::validate(int width, int height) const {
  if (const auto* r = std::get_if<RectRegion>(&region_)) {
    if (r->x0 > r->x1 || r->y0 > r->y1 || r->x0 < 0 || r->y0 < 0 ||
        r->x1 >= width || r->y1 >= height) {
      throw std::invalid_argument(
          "region " + std::to_string(r->x0) + "," + std::to_string(r->y0) +
          "," + std::to_string(r->x1) + "," + std::to_string(r->y1) +
          " does not fit a " + std::to_string(width) + "x" +
          std::to_string(height) + " frame");
    }
  } else {
    const auto& m = std::get<GrayImage>(region_);
    if (m.width() != width || m.height() != height) {
      throw std::invalid_argument(
          "mask is " + std::to_string(m.width()) + "x" +
          std::to_string(m.height()) + ", frame is " + std::to_string(width) +
          "x" + std::to_string(height));
    }
  }
}

bool RegionMask::contains(Pixel p) const {
  if (const auto* r = std::get_if<RectRegion>(&region_)) {
    return p.x >= r->x0 && p.x <= r->x1 && p.y >= r->y0 && p.y <= r->y1;
  }
  const auto& m = std::get<GrayImage>(region_);
  return m.contains(p.x, p.y) && m.at(p.x, p.y) != 0;
}

}  // namespace edgeforce
