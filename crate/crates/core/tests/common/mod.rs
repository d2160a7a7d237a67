//! Structural validator for the subset of JSON Schema used by
//! `schemas/cli-output.schema.json`: type, properties, required,
//! additionalProperties, items, enum, minimum, minItems/maxItems, $ref.

use serde_json::Value;

pub fn load_schema() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/schemas/cli-output.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn validate_command(root: &Value, command: &str, instance: &Value) -> Result<(), String> {
    let def = root
        .pointer(&format!("/$defs/{command}"))
        .ok_or_else(|| format!("no schema definition for {command}"))?;
    validate(root, def, instance, command)
}

fn resolve<'a>(root: &'a Value, schema: &'a Value) -> &'a Value {
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        let pointer = r.trim_start_matches('#');
        return root.pointer(pointer).unwrap_or(schema);
    }
    schema
}

fn type_matches(ty: &str, instance: &Value) -> bool {
    match ty {
        "object" => instance.is_object(),
        "array" => instance.is_array(),
        "string" => instance.is_string(),
        "boolean" => instance.is_boolean(),
        "number" => instance.is_number(),
        "integer" => instance.as_i64().is_some() || instance.as_u64().is_some(),
        "null" => instance.is_null(),
        _ => false,
    }
}

pub fn validate(root: &Value, schema: &Value, instance: &Value, path: &str) -> Result<(), String> {
    let schema = resolve(root, schema);

    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(instance) {
            return Err(format!("{path}: {instance} not in enum {allowed:?}"));
        }
    }
    if let Some(ty) = schema.get("type").and_then(Value::as_str) {
        if !type_matches(ty, instance) {
            return Err(format!("{path}: expected {ty}, got {instance}"));
        }
    }
    if let Some(min) = schema.get("minimum").and_then(Value::as_f64) {
        let v = instance.as_f64().ok_or_else(|| format!("{path}: minimum on non-number"))?;
        if v < min {
            return Err(format!("{path}: {v} below minimum {min}"));
        }
    }
    if let Some(obj) = instance.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !obj.contains_key(key) {
                    return Err(format!("{path}: missing required key {key:?}"));
                }
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        let additional = schema
            .get("additionalProperties")
            .and_then(Value::as_bool)
            .unwrap_or(true);
        for (key, value) in obj {
            match props.and_then(|p| p.get(key)) {
                Some(sub) => validate(root, sub, value, &format!("{path}.{key}"))?,
                None if !additional => {
                    return Err(format!("{path}: unexpected key {key:?}"));
                }
                None => {}
            }
        }
    }
    if let Some(items) = instance.as_array() {
        if let Some(min_items) = schema.get("minItems").and_then(Value::as_u64) {
            if (items.len() as u64) < min_items {
                return Err(format!("{path}: fewer than {min_items} items"));
            }
        }
        if let Some(max_items) = schema.get("maxItems").and_then(Value::as_u64) {
            if (items.len() as u64) > max_items {
                return Err(format!("{path}: more than {max_items} items"));
            }
        }
        if let Some(item_schema) = schema.get("items") {
            for (i, item) in items.iter().enumerate() {
                validate(root, item_schema, item, &format!("{path}[{i}]"))?;
            }
        }
    }
    Ok(())
}
