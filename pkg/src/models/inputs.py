from typing import List, Optional

from pydantic import BaseModel, field_validator, model_validator

from src.utils.validators import validate_cap, validate_prime, validate_variable_names


class RingFileModel(BaseModel):
    """
    Validated contents of a ring file.
    """
    char: int
    vars: List[str]
    ideal: List[str]
    cap: Optional[int] = None

    @field_validator('char')
    @classmethod
    def check_char(cls, value):
        if not validate_prime(value):
            raise ValueError(f"char must be a prime below 2^31, got {value}")
        return value

    @field_validator('vars')
    @classmethod
    def check_vars(cls, value):
        if not value:
            raise ValueError("vars must list at least one variable")
        if not validate_variable_names(value):
            raise ValueError(f"vars must be distinct identifiers, got {value}")
        return value

    @field_validator('cap')
    @classmethod
    def check_cap(cls, value):
        if value is not None and not validate_cap(value):
            raise ValueError(f"cap must be a positive integer, got {value}")
        return value


class SkewFileModel(BaseModel):
    """
    Validated contents of a skew-matrix file.
    """
    size: int
    rows: List[List[str]]
    vars: Optional[List[str]] = None
    char: Optional[int] = None

    @field_validator('char')
    @classmethod
    def check_char(cls, value):
        if value is not None and not validate_prime(value):
            raise ValueError(f"char must be a prime below 2^31, got {value}")
        return value

    @field_validator('vars')
    @classmethod
    def check_vars(cls, value):
        if value is not None and not validate_variable_names(value):
            raise ValueError(f"vars must be distinct identifiers, got {value}")
        return value

    @model_validator(mode='after')
    def check_shape(self):
        if self.size < 1:
            raise ValueError(f"size must be positive, got {self.size}")
        if len(self.rows) != self.size:
            raise ValueError(f"expected {self.size} rows, got {len(self.rows)}")
        for index, row in enumerate(self.rows):
            if len(row) != self.size:
                raise ValueError(f"row {index + 1} has {len(row)} entries, expected {self.size}")
        return self
