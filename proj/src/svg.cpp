#include "polyguard/svg.hpp"

#include <fstream>
#include <sstream>

namespace polyguard {

namespace {

std::string coord(const Rat& r) { return rat_to_decimal(r, 12); }

void path_of(std::ostringstream& os, const std::vector<Point>& ring) {
    os << "M";
    for (std::size_t i = 0; i < ring.size(); ++i)
        os << (i ? " L" : " ") << coord(ring[i].x) << " " << coord(ring[i].y);
    os << " Z";
}

}  // namespace

std::string render_svg(const SimplePolygon& P, const GArrangement* A,
                       const std::vector<GuardRef>& guards, const std::vector<int>& unseen_faces) {
    BBox b = bbox_of(P.vertices());
    Rat w = b.xhi - b.xlo, h = b.yhi - b.ylo;
    Rat pad = std::max(w, h) / 20 + 1;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << coord(b.xlo - pad) << " "
       << coord(b.ylo - pad) << " " << coord(w + 2 * pad) << " " << coord(h + 2 * pad)
       << "\">\n";
    // Flip y so the math orientation reads naturally.
    os << "<g transform=\"scale(1,-1) translate(0," << coord(-(b.ylo + b.yhi)) << ")\">\n";

    double stroke = std::max(w.get_d(), h.get_d()) / 400.0;
    os << "<path d=\"";
    path_of(os, P.vertices());
    os << "\" fill=\"#f8f8f8\" stroke=\"black\" stroke-width=\"" << 2 * stroke << "\"/>\n";

    if (A) {
        for (int f : unseen_faces) {
            os << "<path d=\"";
            path_of(os, A->face(f).cell.pts);
            os << "\" fill=\"#7fc97f\" fill-opacity=\"0.7\" stroke=\"none\"/>\n";
        }
        for (const GuardRef& g : guards) {
            if (!g.is_face || g.face_id < 0) continue;
            os << "<path d=\"";
            path_of(os, A->face(g.face_id).cell.pts);
            os << "\" fill=\"#fdaa48\" fill-opacity=\"0.8\" stroke=\"none\"/>\n";
        }
        for (const Segment& e : A->live_edges()) {
            os << "<line x1=\"" << coord(e.a.x) << "\" y1=\"" << coord(e.a.y) << "\" x2=\""
               << coord(e.b.x) << "\" y2=\"" << coord(e.b.y)
               << "\" stroke=\"#5577aa\" stroke-width=\"" << stroke << "\"/>\n";
        }
    }
    for (const GuardRef& g : guards) {
        os << "<circle cx=\"" << coord(g.point.x) << "\" cy=\"" << coord(g.point.y) << "\" r=\""
           << 3 * stroke << "\" fill=\"#ff7f00\" stroke=\"black\" stroke-width=\""
           << stroke / 2 << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

void render_svg_file(const std::string& path, const SimplePolygon& P, const GArrangement* A,
                     const std::vector<GuardRef>& guards, const std::vector<int>& unseen_faces) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << render_svg(P, A, guards, unseen_faces);
}

}  // namespace polyguard
