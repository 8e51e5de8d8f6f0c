#include "ambilex/report/svg.h"

#include <fmt/format.h>

namespace ambilex::report {

namespace {

std::string num(double v) {
  std::string s = fmt::format("{:.2f}", v);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string_view anchor_name(SvgDocument::Anchor a) {
  switch (a) {
    case SvgDocument::Anchor::Start: return "start";
    case SvgDocument::Anchor::Middle: return "middle";
    case SvgDocument::Anchor::End: return "end";
  }
  return "start";
}

}  // namespace

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

SvgDocument::SvgDocument(double width, double height) : width_(width), height_(height) {}

void SvgDocument::rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke) {
  body_ += fmt::format("  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"{}\"/>\n", num(x),
                       num(y), num(w), num(h), fill, stroke);
}

void SvgDocument::line(double x1, double y1, double x2, double y2, std::string_view stroke, double width,
                       std::string_view dash) {
  std::string dash_attr;
  if (!dash.empty()) dash_attr = fmt::format(" stroke-dasharray=\"{}\"", dash);
  body_ += fmt::format("  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"{}/>\n",
                       num(x1), num(y1), num(x2), num(y2), stroke, num(width), dash_attr);
}

void SvgDocument::circle(double cx, double cy, double r, std::string_view fill, std::string_view stroke) {
  body_ += fmt::format("  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" stroke=\"{}\"/>\n", num(cx), num(cy),
                       num(r), fill, stroke);
}

void SvgDocument::text(double x, double y, std::string_view content, double size, Anchor anchor, double rotate) {
  std::string transform;
  if (rotate != 0.0) transform = fmt::format(" transform=\"rotate({} {} {})\"", num(rotate), num(x), num(y));
  body_ += fmt::format("  <text x=\"{}\" y=\"{}\" font-size=\"{}\" text-anchor=\"{}\"{}>{}</text>\n", num(x), num(y),
                       num(size), anchor_name(anchor), transform, xml_escape(content));
}

void SvgDocument::comment(std::string_view content) {
  std::string safe(content);
  for (std::size_t pos = safe.find("--"); pos != std::string::npos; pos = safe.find("--")) safe.replace(pos, 2, "- ");
  body_ += fmt::format("  <!-- {} -->\n", safe);
}

std::string SvgDocument::finish() const {
  return fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "font-family=\"DejaVu Sans, Arial, sans-serif\">\n"
      "{2}</svg>\n",
      num(width_), num(height_), body_);
}

}  // namespace ambilex::report
