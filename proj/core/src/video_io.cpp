#include "atcs/video_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "atcs/textio.hpp"

namespace fs = std::filesystem;

namespace atcs {

void validate_frame(const Frame& frame) {
  if (frame.height() < 1 || frame.width() < 1)
    throw std::invalid_argument("frame must be at least 1x1");
  for (double v : frame.pixels()) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
      throw std::invalid_argument("frame intensity outside [0, 1]");
  }
}

void validate_sequence(const VideoSequence& video) {
  if (video.frames.empty()) throw std::invalid_argument("empty video sequence");
  for (const Frame& f : video.frames) {
    validate_frame(f);
    if (!f.same_size(video.frames.front()))
      throw std::invalid_argument("inconsistent frame dimensions in sequence");
  }
}

namespace {

constexpr double kInv255 = 1.0 / 255.0;

// Next header token, skipping whitespace and '#' comments.
std::string next_pnm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

Frame read_pgm_stream(std::istream& in, const fs::path& path) {
  std::string magic = next_pnm_token(in);
  if (magic != "P5")
    throw std::runtime_error(path.string() + ": unsupported PGM variant '" + magic +
                             "' (only binary P5 accepted)");
  int width = 0, height = 0, maxval = 0;
  try {
    width = static_cast<int>(parse_integer(next_pnm_token(in)));
    height = static_cast<int>(parse_integer(next_pnm_token(in)));
    maxval = static_cast<int>(parse_integer(next_pnm_token(in)));
  } catch (const std::invalid_argument&) {
    throw std::runtime_error(path.string() + ": malformed PGM header");
  }
  if (width < 1 || height < 1) throw std::runtime_error(path.string() + ": bad PGM dimensions");
  if (maxval < 1 || maxval > 255)
    throw std::runtime_error(path.string() + ": only 8-bit PGM supported (maxval 1..255)");

  std::vector<std::uint8_t> raster(static_cast<std::size_t>(width) * height);
  in.read(reinterpret_cast<char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
  if (static_cast<std::size_t>(in.gcount()) != raster.size())
    throw std::runtime_error(path.string() + ": truncated PGM raster");

  Frame frame(height, width);
  double* out = frame.data();
  for (std::size_t i = 0; i < raster.size(); ++i) out[i] = raster[i] * kInv255;
  return frame;
}

VideoSequence load_pgm_directory(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm")
      files.push_back(entry.path());
  }
  if (files.empty())
    throw std::runtime_error(dir.string() + ": no .pgm files found");
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

  VideoSequence video;
  video.frames.reserve(files.size());
  for (const fs::path& file : files) {
    Frame frame = load_pgm(file);
    if (!video.frames.empty() && !frame.same_size(video.frames.front()))
      throw std::runtime_error(file.string() + ": inconsistent dimensions across frames");
    video.frames.push_back(std::move(frame));
  }
  return video;
}

VideoSequence load_raw_manifest(const fs::path& manifest) {
  int width = 0, height = 0;
  long long n_frames = 0;
  fs::path raw_path;
  for (const auto& [key, value] : read_key_value_file(manifest)) {
    if (key == "width") width = static_cast<int>(parse_integer(value));
    else if (key == "height") height = static_cast<int>(parse_integer(value));
    else if (key == "frames") n_frames = parse_integer(value);
    else if (key == "data") raw_path = value;
    else throw std::invalid_argument(manifest.string() + ": unknown manifest key '" + key + "'");
  }
  if (width < 1 || height < 1 || n_frames < 1)
    throw std::invalid_argument(manifest.string() + ": manifest needs positive width, height, frames");
  if (raw_path.empty()) raw_path = fs::path(manifest).replace_extension(".raw");
  else if (raw_path.is_relative()) raw_path = manifest.parent_path() / raw_path;

  std::ifstream in(raw_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open raw file " + raw_path.string());

  const std::size_t frame_bytes = static_cast<std::size_t>(width) * height;
  std::vector<std::uint8_t> raster(frame_bytes);
  VideoSequence video;
  video.frames.reserve(static_cast<std::size_t>(n_frames));
  for (long long t = 0; t < n_frames; ++t) {
    in.read(reinterpret_cast<char*>(raster.data()), static_cast<std::streamsize>(frame_bytes));
    if (static_cast<std::size_t>(in.gcount()) != frame_bytes)
      throw std::runtime_error(raw_path.string() + ": truncated raw file (frame " +
                               std::to_string(t) + ")");
    Frame frame(height, width);
    double* out = frame.data();
    for (std::size_t i = 0; i < frame_bytes; ++i) out[i] = raster[i] * kInv255;
    video.frames.push_back(std::move(frame));
  }
  return video;
}

}  // namespace

Frame load_pgm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_pgm_stream(in, path);
}

VideoSequence load_sequence(const fs::path& path) {
  if (!fs::exists(path)) throw std::runtime_error("no such path: " + path.string());
  if (fs::is_directory(path)) return load_pgm_directory(path);
  return load_raw_manifest(path);
}

void save_frame(const Frame& frame, const fs::path& path) {
  validate_frame(frame);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "P5\n" << frame.width() << " " << frame.height() << "\n255\n";
  const double* in = frame.data();
  std::vector<std::uint8_t> raster(frame.size());
  for (std::size_t i = 0; i < raster.size(); ++i) {
    long v = std::lround(in[i] * 255.0);
    raster[i] = static_cast<std::uint8_t>(std::clamp(v, 0L, 255L));
  }
  out.write(reinterpret_cast<const char*>(raster.data()),
            static_cast<std::streamsize>(raster.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void save_sequence(const VideoSequence& video, const fs::path& dir, const std::string& prefix) {
  fs::create_directories(dir);
  for (std::size_t i = 0; i < video.frames.size(); ++i) {
    std::ostringstream name;
    name << prefix;
    std::string digits = std::to_string(i);
    for (std::size_t pad = digits.size(); pad < 5; ++pad) name << '0';
    name << digits << ".pgm";
    save_frame(video.frames[i], dir / name.str());
  }
}

}  // namespace atcs
