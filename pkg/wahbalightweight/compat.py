from typing import Any, Union

numeric_types = (int, float)
integer_types = (int,)

# will attempt to use the Rust json library if installed

try:
    import orjson

    JSONDecodeError = orjson.JSONDecodeError

    def dumps(data: Any) -> str:
        return orjson.dumps(data, option=orjson.OPT_INDENT_2).decode("utf-8")

    def loads(data: Union[str, bytes]) -> Any:
        return orjson.loads(data)

except ImportError:
    import json

    JSONDecodeError = json.JSONDecodeError

    def dumps(data: Any) -> str:
        return json.dumps(data, indent=2)

    def loads(data: Union[str, bytes]) -> Any:
        return json.loads(data)
