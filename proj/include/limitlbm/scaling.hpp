#ifndef LIMITLBM_SCALING_HPP_
#define LIMITLBM_SCALING_HPP_

namespace limitlbm {

/// Parameter bundle of the diffusive h-scaling.
///
/// The sound speed is tied to the grid parameter via c_s = 1/h, which fixes
/// the relaxation time tau = 3 nu h^2 and the gas constant product
/// RT = 1/(3 h^2). The lattice relaxation rate omega = 1/(3 nu + 1/2) already
/// contains the half-step shift of the space-time discretization. Particle
/// mass is normalized to one.
class ScalingParams {
 public:
  double h() const { return h_; }
  double nu() const { return nu_; }
  double tau() const { return tau_; }
  double omega() const { return omega_; }
  double sound_speed() const { return sound_speed_; }
  double rt() const { return rt_; }
  double mass() const { return 1.0; }

 private:
  friend ScalingParams make_scaling(double nu, double h);
  ScalingParams() = default;

  double h_ = 0.0;
  double nu_ = 0.0;
  double tau_ = 0.0;
  double omega_ = 0.0;
  double sound_speed_ = 0.0;
  double rt_ = 0.0;
};

// Throws DomainError unless nu > 0 and h > 0.
ScalingParams make_scaling(double nu, double h);

struct FlowCharacteristics {
  double velocity = 0.0;  // U
  double length = 0.0;    // L
  double knudsen = 0.0;
  double mach = 0.0;
  double reynolds = 0.0;
  double mean_free_path = 0.0;
  double mean_thermal_speed = 0.0;
};

// Kn = l_f / L with l_f = sqrt(24/pi) nu h, Ma = U h, Re = U L / nu.
FlowCharacteristics nondimensional_numbers(double velocity, double length,
                                           double nu, double h);

}  // namespace limitlbm

#endif  // LIMITLBM_SCALING_HPP_
