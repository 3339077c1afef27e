#pragma once

#include "qrm/bitvec.hpp"
#include "qrm/css.hpp"
#include "qrm/distill.hpp"
#include "qrm/errors.hpp"
#include "qrm/rm.hpp"
#include "qrm/serialize.hpp"
#include "qrm/wideint.hpp"
