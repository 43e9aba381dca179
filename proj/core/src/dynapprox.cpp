#include "sepkit/approx.hpp"

#include "sepkit/errors.hpp"

#include <map>

namespace sepkit {

// The two budget structures (one per orientation) validate the schedule and
// give k_min after every update; the wedges are solved again only when the
// budget is reachable.
struct DynApprox::Impl {
  int k = 0;
  TGon g;
  Rat tol;
  std::map<int, LabeledPoint> live;
  std::unique_ptr<DynLP> lp[2];

  static DynLine as_line(const DynPoint& p, Orientation o) {
    const bool as_red = (p.point.color == Color::Red) == (o == Orientation::BlueAbove);
    return DynLine{dualize_point(p.point.point), as_red ? Color::Red : Color::Blue, p.point.id, p.delete_at};
  }
};

DynApprox::DynApprox(const std::vector<DynPoint>& initial, int k, const Rat& eps, const Rat& tol)
    : impl_(std::make_unique<Impl>()) {
  impl_->k = k < 0 ? 0 : k;
  impl_->g = make_tgon(eps);
  impl_->tol = tol;
  const Orientation os[2] = {Orientation::BlueAbove, Orientation::RedAbove};
  for (int i = 0; i < 2; ++i) {
    std::vector<DynLine> lines;
    for (const auto& p : initial) lines.push_back(Impl::as_line(p, os[i]));
    DynOptions opt;
    opt.k = impl_->k;
    opt.track_kmin = true;
    impl_->lp[i] = std::make_unique<DynLP>(lines, opt);
  }
  for (const auto& p : initial) impl_->live.emplace(p.point.id, p.point);
  refresh();
}

DynApprox::~DynApprox() = default;

const ApproxReport& DynApprox::insert(const DynPoint& p) {
  if (impl_->live.count(p.point.id)) throw InvariantError("id " + std::to_string(p.point.id) + " already live");
  impl_->lp[0]->insert(Impl::as_line(p, Orientation::BlueAbove));
  impl_->lp[1]->insert(Impl::as_line(p, Orientation::RedAbove));
  impl_->live.emplace(p.point.id, p.point);
  refresh();
  return report_;
}

const ApproxReport& DynApprox::erase(int id) {
  impl_->lp[0]->erase(id);
  impl_->lp[1]->erase(id);
  impl_->live.erase(id);
  refresh();
  return report_;
}

std::vector<LabeledPoint> DynApprox::live() const {
  std::vector<LabeledPoint> out;
  out.reserve(impl_->live.size());
  for (const auto& [id, p] : impl_->live) out.push_back(p);
  return out;
}

long DynApprox::update_index() const { return impl_->lp[0]->update_index(); }

void DynApprox::refresh() {
  const auto pts = live();
  bool red = false, blue = false;
  for (const auto& p : pts) (p.color == Color::Red ? red : blue) = true;
  if (!red || !blue) {
    report_ = ApproxReport{};
    report_.eps = impl_->g.eps;
    report_.tol = impl_->tol;
    report_.tau = impl_->g.tau;
    report_.t = impl_->g.t;
    return;
  }
  const int n = static_cast<int>(pts.size());
  const int k = std::min(impl_->k, n);
  const int k_min = std::min(impl_->lp[0]->query_kmin().first, impl_->lp[1]->query_kmin().first);
  if (k >= k_min) built_ += 2L * impl_->g.t;
  report_ = solve_frames(pts, k, impl_->g, impl_->tol, k_min);
}

}  // namespace sepkit
