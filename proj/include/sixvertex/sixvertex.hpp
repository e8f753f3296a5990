#pragma once

#include "sixvertex/contour.hpp"
#include "sixvertex/critical_asymptotics.hpp"
#include "sixvertex/errors.hpp"
#include "sixvertex/model.hpp"
#include "sixvertex/partition_exact.hpp"
#include "sixvertex/precision.hpp"
#include "sixvertex/quadrature.hpp"
#include "sixvertex/regression.hpp"
#include "sixvertex/report_io.hpp"
#include "sixvertex/root_finding.hpp"
#include "sixvertex/vertex_enum.hpp"
#include "sixvertex/zeta.hpp"
