#pragma once

#include <filesystem>

#include "atcs/image.hpp"

namespace atcs {

/// Loads a grayscale frame sequence.
///
/// `path` is either
///  - a directory of binary (P5) 8-bit PGM files, loaded in lexicographic
///    file-name order, or
///  - a manifest file: a flat key-value sidecar with keys `width`, `height`,
///    `frames` and optionally `data` naming the raw file (default: the
///    manifest path with its extension replaced by ".raw", resolved relative
///    to the manifest). The raw file holds unsigned 8-bit samples,
///    frame-major, row-major within each frame.
///
/// 8-bit values map to [0, 1] by division by 255.
VideoSequence load_sequence(const std::filesystem::path& path);

/// Loads a single P5 PGM file.
Frame load_pgm(const std::filesystem::path& path);

/// Writes a frame as binary PGM (maxval 255); intensity i maps to
/// round(i * 255) clamped to [0, 255].
void save_frame(const Frame& frame, const std::filesystem::path& path);

/// Writes frames as <prefix>NNNNN.pgm under `dir`, creating it if needed.
void save_sequence(const VideoSequence& video, const std::filesystem::path& dir,
                   const std::string& prefix = "frame_");

}  // namespace atcs
