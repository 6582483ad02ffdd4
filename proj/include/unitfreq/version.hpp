#pragma once

#define UNITFREQ_VERSION "0.1.0"
