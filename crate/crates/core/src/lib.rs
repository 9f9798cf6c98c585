pub mod algebra;
pub mod linalg;
pub mod twined;
pub mod verify;
