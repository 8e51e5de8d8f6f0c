#pragma once

#include <string>
#include <string_view>

namespace ambilex::report {

// Minimal SVG document builder. Coordinates are printed with two decimals and
// no locale dependence, so identical calls give identical bytes.
class SvgDocument {
 public:
  SvgDocument(double width, double height);

  void rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke = "none");
  void line(double x1, double y1, double x2, double y2, std::string_view stroke, double width = 1.0,
            std::string_view dash = {});
  void circle(double cx, double cy, double r, std::string_view fill, std::string_view stroke = "none");

  enum class Anchor { Start, Middle, End };
  // `rotate` is in degrees around (x, y).
  void text(double x, double y, std::string_view content, double size = 12.0, Anchor anchor = Anchor::Start,
            double rotate = 0.0);

  void comment(std::string_view content);

  std::string finish() const;

 private:
  double width_;
  double height_;
  std::string body_;
};

std::string xml_escape(std::string_view text);

}  // namespace ambilex::report
