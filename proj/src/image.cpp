#include "bongard/image.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "bongard/error.hpp"

namespace bongard {

namespace fs = std::filesystem;

Image::Image(int width, int height) : Image(width, height, std::vector<std::uint8_t>(
                                                               static_cast<std::size_t>(std::max(width, 0)) *
                                                               static_cast<std::size_t>(std::max(height, 0)))) {}

Image::Image(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
  }
  if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::DimensionMismatch, "pixel count does not match width x height");
  }
  for (auto p : pixels_) {
    if (p > 1) throw Error(ErrorCode::MalformedFormat, "pixel value outside {0,1}");
  }
}

void Image::set(int x, int y, std::uint8_t value) {
  pixels_[static_cast<std::size_t>(y) * width_ + x] = value ? 1 : 0;
}

std::size_t Image::ink_count() const {
  std::size_t n = 0;
  for (auto p : pixels_) n += p;
  return n;
}

BongardProblem::BongardProblem(int id, std::vector<Image> left, std::vector<Image> right,
                               std::optional<Concept> rule, std::vector<SceneDescription> scenes)
    : id_(id), left_(std::move(left)), right_(std::move(right)), concept_(std::move(rule)),
      scenes_(std::move(scenes)) {
  if (left_.size() != kGroupSize || right_.size() != kGroupSize) {
    throw Error(ErrorCode::InvalidArgument, "each group must hold exactly six images");
  }
  for (int i = 0; i < kImagesPerProblem; ++i) {
    const Image& img = image(i);
    if (img.width() != width() || img.height() != height()) {
      throw Error(ErrorCode::DimensionMismatch, "all twelve images must share dimensions");
    }
  }
  if (!scenes_.empty() && scenes_.size() != kImagesPerProblem) {
    throw Error(ErrorCode::InvalidArgument, "ground truth needs one scene per image");
  }
}

const Image& BongardProblem::image(int index) const {
  if (index < 0 || index >= kImagesPerProblem) {
    throw Error(ErrorCode::InvalidArgument, "image index outside 0..11");
  }
  return index < kGroupSize ? left_[index] : right_[index - kGroupSize];
}

PairState::PairState(Image first, Image second) : first_(std::move(first)), second_(std::move(second)) {
  if (first_.width() != second_.width() || first_.height() != second_.height()) {
    throw Error(ErrorCode::DimensionMismatch, "pair channels must share dimensions");
  }
}

PairState make_state(const Image& a, const Image& b) { return PairState(a, b); }

Image downsample(const Image& img, int target_w, int target_h) {
  if (target_w < 1 || target_h < 1 || target_w > img.width() || target_h > img.height()) {
    throw Error(ErrorCode::InvalidTarget, "downsample target must be within 1..source dimensions");
  }
  Image out(target_w, target_h);
  for (int ty = 0; ty < target_h; ++ty) {
    const int y0 = ty * img.height() / target_h;
    const int y1 = (ty + 1) * img.height() / target_h;
    for (int tx = 0; tx < target_w; ++tx) {
      const int x0 = tx * img.width() / target_w;
      const int x1 = (tx + 1) * img.width() / target_w;
      int ink = 0;
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) ink += img.at(x, y);
      }
      const int count = (x1 - x0) * (y1 - y0);
      out.set(tx, ty, 2 * ink >= count ? 1 : 0);
    }
  }
  return out;
}

namespace {

class PbmReader {
 public:
  explicit PbmReader(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view token() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '#') {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  int integer() {
    const auto tok = token();
    int value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw Error(ErrorCode::MalformedFormat, "expected an integer in PBM header");
    }
    return value;
  }

  /// Pixels in P1 may be separated by whitespace or packed together.
  std::uint8_t pixel() {
    skip_space();
    if (pos_ >= text_.size()) throw Error(ErrorCode::MalformedFormat, "PBM pixel data truncated");
    const char c = text_[pos_++];
    if (c == '0') return 0;
    if (c == '1') return 1;
    throw Error(ErrorCode::MalformedFormat, std::string("PBM pixel outside {0,1}: '") + c + "'");
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Image parse_pbm(std::string_view text) {
  PbmReader reader(text);
  if (reader.token() != "P1") throw Error(ErrorCode::MalformedFormat, "not a plain PBM (missing P1 magic)");
  const int width = reader.integer();
  const int height = reader.integer();
  if (width < 1 || height < 1) throw Error(ErrorCode::MalformedFormat, "PBM dimensions must be positive");
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (auto& p : pixels) p = reader.pixel();
  if (!reader.at_end()) throw Error(ErrorCode::MalformedFormat, "trailing data after PBM pixels");
  return Image(width, height, std::move(pixels));
}

std::string to_pbm(const Image& img) {
  std::string out = "P1\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n";
  // Rows wrapped at 70 characters, the plain-PBM line limit.
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (x > 0 && x % 70 == 0) out += '\n';
      out += img.at(x, y) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

Image read_pbm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_pbm(buffer.str());
}

void write_pbm(const Image& img, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << to_pbm(img);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

namespace {

std::string image_file_name(int index) {
  std::string name = std::to_string(index);
  if (name.size() < 2) name.insert(0, "0");
  return name + ".pbm";
}

}  // namespace

BongardProblem load_bp(const fs::path& directory) {
  std::vector<Image> images;
  images.reserve(kImagesPerProblem);
  for (int i = 0; i < kImagesPerProblem; ++i) {
    const fs::path file = directory / image_file_name(i);
    if (!fs::is_regular_file(file)) throw Error(ErrorCode::MissingFile, "missing " + file.string());
    images.push_back(read_pbm(file));
    if (images.back().width() != images.front().width() || images.back().height() != images.front().height()) {
      throw Error(ErrorCode::DimensionMismatch, file.string() + " differs in size from 00.pbm");
    }
  }
  int id = 0;
  const std::string stem = directory.filename().empty() ? directory.parent_path().filename().string()
                                                        : directory.filename().string();
  std::from_chars(stem.data(), stem.data() + stem.size(), id);
  std::vector<Image> left(images.begin(), images.begin() + kGroupSize);
  std::vector<Image> right(images.begin() + kGroupSize, images.end());
  return BongardProblem(id, std::move(left), std::move(right));
}

void save_bp(const BongardProblem& bp, const fs::path& directory) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + directory.string() + ": " + ec.message());
  for (int i = 0; i < kImagesPerProblem; ++i) write_pbm(bp.image(i), directory / image_file_name(i));
}

}  // namespace bongard
