// Writes a procedural moving-disk PGM sequence, handy as simulator input.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "atcs/synthetic.hpp"
#include "atcs/textio.hpp"
#include "atcs/video_io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"synthetic moving-disk scene generator"};

  atcs::SceneParams params;
  std::string out;
  int n_frames = 96;
  double speed_x = 1.0, speed_y = 0.0;
  std::vector<std::string> segment_specs;

  app.add_option("--out", out, "output frame directory")->required();
  app.add_option("--frames", n_frames, "frame count")->capture_default_str();
  app.add_option("--height", params.height)->capture_default_str();
  app.add_option("--width", params.width)->capture_default_str();
  app.add_option("--radius", params.radius)->capture_default_str();
  app.add_option("--start-x", params.start_x)->capture_default_str();
  app.add_option("--start-y", params.start_y)->capture_default_str();
  app.add_option("--speed-x", speed_x, "pixels per frame")->capture_default_str();
  app.add_option("--speed-y", speed_y, "pixels per frame")->capture_default_str();
  app.add_option("--disk-texture", params.disk_texture, "noise amplitude on the disk")
      ->capture_default_str();
  app.add_option("--bg-texture", params.bg_texture, "noise amplitude on the background")
      ->capture_default_str();
  app.add_option("--texture-scale", params.texture_scale, "noise lattice pitch in pixels")
      ->capture_default_str();
  app.add_flag("--square", params.square, "square instead of disk");
  app.add_option("--seed", params.seed)->capture_default_str();
  app.add_option("--segment", segment_specs,
                 "piecewise motion as frames:speed_x[:speed_y]; overrides --frames/--speed-*");

  try {
    app.parse(argc, argv);

    std::vector<atcs::SceneSegment> segments;
    if (segment_specs.empty()) {
      segments.push_back({n_frames, speed_x, speed_y});
    } else {
      for (const std::string& spec : segment_specs) {
        atcs::SceneSegment seg;
        const auto first = spec.find(':');
        if (first == std::string::npos)
          throw std::invalid_argument("--segment needs frames:speed_x[:speed_y]");
        seg.n_frames = static_cast<int>(atcs::parse_integer(spec.substr(0, first)));
        const auto second = spec.find(':', first + 1);
        if (second == std::string::npos) {
          seg.speed_x = atcs::parse_double(spec.substr(first + 1));
        } else {
          seg.speed_x = atcs::parse_double(spec.substr(first + 1, second - first - 1));
          seg.speed_y = atcs::parse_double(spec.substr(second + 1));
        }
        segments.push_back(seg);
      }
    }

    const atcs::VideoSequence video = atcs::disk_scene(params, segments);
    atcs::save_sequence(video, out);
    std::cout << video.frames.size() << " frames -> " << out << "\n";
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
