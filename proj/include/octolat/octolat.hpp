#pragma once

#include "octolat/grid.hpp"
#include "octolat/octonion.hpp"
#include "octolat/operators.hpp"
#include "octolat/report.hpp"
#include "octolat/serialize.hpp"
#include "octolat/stokes.hpp"
#include "octolat/suites.hpp"
#include "octolat/weyl.hpp"
