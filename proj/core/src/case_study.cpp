#include "chronsti/case_study.h"

#include "chronsti/mixing.h"

namespace chronsti {

CohortState case_study_initial_state() {
  CohortState s;
  for (auto sex : {Sex::Male, Sex::Female}) {
    s.at({sex, Risk::Low}, HealthState::Susceptible) = 399760.0;
    s.at({sex, Risk::Low}, HealthState::Infected) = 240.0;
    s.at({sex, Risk::High}, HealthState::Susceptible) = 99940.0;
    s.at({sex, Risk::High}, HealthState::Infected) = 60.0;
  }
  return s;
}

ParameterSet case_study_reference() {
  ParameterSet p;
  p[ParamId::omega_MH] = 9.10;
  p[ParamId::omega_ML] = 2.98;
  p[ParamId::omega_FH] = 9.00;
  p[ParamId::omega_FL] = 1.96;
  p[ParamId::chi] = 0.01;
  p[ParamId::beta] = 0.16;
  p[ParamId::trans_2_3] = 0.80;
  p[ParamId::trans_3_4] = 0.09;
  p[ParamId::trans_4_5] = 0.04;
  p[ParamId::trans_1_5] = 0.0005;
  p[ParamId::eta] = 0.90;
  p[ParamId::sigma] = 0.90;
  p[ParamId::alpha] = 0.90;
  p[ParamId::gamma] = 0.90;
  p[ParamId::c_screen] = 25.39;
  p[ParamId::c_vac] = 150.02;
  p[ParamId::c_test] = 20.01;
  p[ParamId::c_blood] = 30.0;
  p[ParamId::c_treat] = 4999.78;
  p[ParamId::c_dis] = 9999.95;
  p[ParamId::c_gp] = 50.01;
  p[ParamId::u_2] = 0.70;
  p[ParamId::u_3] = 0.60;
  p[ParamId::u_4] = 0.30;
  return p;
}

ParameterSet rates_to_yearly_probabilities(const ParameterSet& ode_params) {
  ParameterSet p = ode_params;
  for (auto id : {ParamId::trans_2_3, ParamId::trans_3_4, ParamId::trans_4_5, ParamId::trans_1_5})
    p[id] = rate_to_probability(ode_params[id]);
  return p;
}

}  // namespace chronsti
