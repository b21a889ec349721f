from dataclasses import dataclass, field
import os
from dotenv import load_dotenv

load_dotenv()

@dataclass
class RuntimeSettings:
    threads: int = field(default_factory=lambda: int(os.getenv('SCHREIER_LAB_THREADS', '0')))
    debug: bool = field(default_factory=lambda: os.getenv('DEBUG', 'False').lower() == 'true')

    @property
    def workers(self) -> int:
        """Worker count with 0 meaning one per CPU"""
        if self.threads > 0:
            return self.threads
        return os.cpu_count() or 1
