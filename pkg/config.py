from typing import Final

# Логирование
LOG_FORMAT: Final[str] = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_LEVEL: Final[str] = "WARNING"

# Коды выхода verify и CLI
EXIT_OK: Final[int] = 0
EXIT_MISMATCH: Final[int] = 1
EXIT_ERROR: Final[int] = 2

# Распознавание особенностей класса T
CLASSIFY_T_MAX_ORDER: Final[int] = 2**31

# Группа Z_4, действующая на C x C
DEFAULT_GROUP_ORDER: Final[int] = 4

# Границы сканирования в сценариях проверки
HJ_SCAN_MAX_M: Final[int] = 200
CPQ_SCAN_MAX_P: Final[int] = 50
CLASS_T_SCAN_MAX_R: Final[int] = 200
WAHL_SCAN_MAX_R: Final[int] = 900
SMOOTHING_RANDOM_TRIALS: Final[int] = 50
SMOOTHING_RANDOM_SEED: Final[int] = 20240601

# Семейство W_{4,n}
E4_CHI: Final[int] = 48
E4_SIGMA: Final[int] = -32
W4N_MAX: Final[int] = 9

# Параллельный запуск сценариев
SCENARIO_WORKERS: Final[int] = 4
